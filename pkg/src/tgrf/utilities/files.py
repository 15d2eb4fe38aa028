"""Several convenient functions for interacting with files"""

from contextlib import contextmanager


@contextmanager
def lock_file_manager(file_name, mode='a+'):
    """Create and lock `file_name` as context manager

    Use this manager as

    >>> with lock_file_manager('rows.jsonl') as lf:
    ...     print('{"key": 1}', file=lf)

    While the code inside the `with` block is executing, the file is locked using
    `fcntl.flock`, so that concurrent sweeps writing to the same checkpoint do not
    interleave lines.  The lock is released even if the code raises.

    """
    import fcntl
    with open(file_name, mode) as file_descriptor:
        try:
            fcntl.flock(file_descriptor, fcntl.LOCK_EX)
            yield file_descriptor
        finally:
            fcntl.flock(file_descriptor, fcntl.LOCK_UN)


def md5checksum(file_name):
    """Compute MD5 checksum on a file, even if it is quite large"""
    from hashlib import md5
    hash_md5 = md5()
    with open(file_name, "rb") as f:
        for chunk in iter(lambda: f.read(32768), b""):
            hash_md5.update(chunk)
    return hash_md5.hexdigest()


def array_checksum(*arrays):
    """MD5 checksum of the little-endian bytes of one or more arrays

    Arrays are converted to little-endian contiguous form first, so that the
    result does not depend on the platform or on the memory layout.

    """
    import numpy as np
    from hashlib import md5
    hash_md5 = md5()
    for array in arrays:
        a = np.ascontiguousarray(array)
        a = a.astype(a.dtype.newbyteorder("<"), copy=False)
        hash_md5.update(a.tobytes())
    return hash_md5.hexdigest()
