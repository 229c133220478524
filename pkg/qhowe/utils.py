import json
import logging
import os

from qhowe.exception import BadValue

MAX_RANK_ENV = "HOWE_MAX_RANK"
DEFAULT_MAX_RANK = 3
INFINITY_TOKENS = ("inf", "infinity", "oo", "∞")

_log = logging.getLogger("utils")


def setup_basic_logging():
    logging.basicConfig(level=logging.DEBUG,
                        format="%(asctime)s %(levelname)s %(name)s: "
                        "%(message)s")


def get_max_rank():
    """Read the verification rank bound from the environment

    :return: the value of ``HOWE_MAX_RANK`` or 3 when it is unset
    :rtype: int
    """

    raw = os.environ.get(MAX_RANK_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_RANK
    try:
        value = int(raw)
    except ValueError:
        err_msg = "%s must be an integer, got %r" % (MAX_RANK_ENV, raw)
        _log.error(err_msg)
        raise BadValue(err_msg)
    if value < 1:
        err_msg = "%s must be at least 1, got %s" % (MAX_RANK_ENV, value)
        _log.error(err_msg)
        raise BadValue(err_msg)
    return value


def parse_int_or_infinity(token):
    """Parse a decimal integer or one of the infinity spellings

    :return: an int, or None for infinity
    """

    if token is None:
        return None
    text = str(token).strip().lower()
    if text in INFINITY_TOKENS:
        return None
    try:
        return int(text)
    except ValueError:
        err_msg = "Invalid integer or infinity: %r" % token
        _log.error(err_msg)
        raise BadValue(err_msg)


def format_int_or_infinity(value):
    return "inf" if value is None else str(value)


def parse_int_list(text):
    """Parse a comma separated list of signed integers such as ``"1,3,-4"``

    Whitespace is ignored and the empty string gives the empty list.
    """

    if text is None:
        raise BadValue("Invalid value. None is not supported")
    stripped = text.strip().strip("{}[]()")
    if stripped == "":
        return []
    try:
        return [int(piece) for piece in stripped.split(",")]
    except ValueError:
        err_msg = "Invalid integer list: %r" % text
        _log.error(err_msg)
        raise BadValue(err_msg)


def is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def dumps(obj):
    """Deterministic JSON text used by every machine readable output"""

    return json.dumps(obj, sort_keys=True)
