# Small helpers for turning command-line and CSV text into numbers and back

def format_float(x):
    """Full-precision decimal representation with '.' as the separator"""
    return f"{float(x):.17g}"


def parse_float(x):
    """Parse a float, accepting simple fractions such as '1/800' and powers '2**-8'"""
    from fractions import Fraction
    s = str(x).strip()
    if "**" in s:
        base, exponent = s.split("**", 1)
        return float(Fraction(base)) ** float(Fraction(exponent.strip("()")))
    if "^" in s:
        base, exponent = s.split("^", 1)
        return float(Fraction(base)) ** float(Fraction(exponent.strip("()")))
    return float(Fraction(s))


def parse_float_list(x):
    """Parse a comma-separated list of floats"""
    return [parse_float(v) for v in str(x).split(",") if v.strip()]


def parse_window(x):
    """Parse an index window 'a,b' into a pair of integers"""
    parts = [v for v in str(x).split(",") if v.strip()]
    if len(parts) != 2:
        raise ValueError(f"Expected a window of the form 'a,b', not '{x}'")
    a, b = (int(round(parse_float(v))) for v in parts)
    return a, b
