"""
Utility functions shared by the field, design and search modules
"""
import os
import sys
import logging
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

import galois
from tqdm import tqdm


def setup_logging(log_level: str = "INFO"):
    """Configure logging for the application"""
    logging.basicConfig(
        level=getattr(logging, log_level.upper()),
        format='%(asctime)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S',
        stream=sys.stderr
    )


_PROGRESS_ENABLED = True


def set_progress_enabled(enabled: bool):
    """Globally switch tqdm progress bars on or off (``--quiet``)"""
    global _PROGRESS_ENABLED
    _PROGRESS_ENABLED = enabled


def progress(iterable: Iterable, desc: str, total: Optional[int] = None):
    """
    Wrap an iterable in a tqdm bar on stderr

    Bars are hidden when stderr is not a terminal or progress is disabled,
    so redirected runs produce clean logs.
    """
    disable = not _PROGRESS_ENABLED or not sys.stderr.isatty()
    return tqdm(iterable, desc=desc, total=total, file=sys.stderr, disable=disable, leave=False)


def prime_power_parts(q: int) -> Optional[Tuple[int, int]]:
    """
    Split a prime power into (p, n)

    Args:
        q: Candidate prime power

    Returns:
        (p, n) with q = p**n, or None if q is not a prime power
    """
    if q < 2 or not galois.is_prime_power(q):
        return None
    primes, exponents = galois.factors(q)
    return int(primes[0]), int(exponents[0])


def admissible_prime_powers(modulus: int, residue: int, qmax: int, qmin: int = 2) -> List[int]:
    """
    List the prime powers qmin <= q < qmax with q = residue (mod modulus)

    Args:
        modulus: Congruence modulus (4k for Heffter rulers)
        residue: Required residue (2k+1 for Heffter rulers)
        qmax: Exclusive upper bound
        qmin: Inclusive lower bound

    Returns:
        Sorted list of prime powers
    """
    start = qmin + ((residue - qmin) % modulus)
    return [q for q in range(start, qmax, modulus) if prime_power_parts(q) is not None]


def parse_int_list(text: str) -> List[int]:
    """Parse '3,5,7' (spaces tolerated) into [3, 5, 7]"""
    items = [item.strip() for item in text.replace(' ', ',').split(',')]
    return [int(item) for item in items if item]


def format_fraction(value: Fraction, decimals: int = 4) -> str:
    """Format an exact rational as 'a/b (0.xxxx)'"""
    return f"{value.numerator}/{value.denominator} ({float(value):.{decimals}f})"


def format_duration(seconds: float) -> str:
    """Format duration in MM:SS format"""
    mins = int(seconds // 60)
    secs = int(seconds % 60)
    return f"{mins:02d}:{secs:02d}"


def ensure_dir_exists(dirpath: str):
    """Create directory if it doesn't exist"""
    if dirpath:
        os.makedirs(dirpath, exist_ok=True)


def truncate_decimal(value: Fraction, decimals: int = 4) -> Fraction:
    """Cut a non-negative rational to the given number of decimals (no rounding)"""
    scale = 10 ** decimals
    return Fraction(int(value * scale), scale)
