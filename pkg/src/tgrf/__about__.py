# SPDX-FileCopyrightText: 2026-present tgrf developers
#
# SPDX-License-Identifier: MIT
__version__ = "0.4.0"
