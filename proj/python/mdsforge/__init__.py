"""MDS and involutory MDS matrices over finite fields.

Everything is driven by two conventions: a field is named by its spec string
("2^4/0x13", "2^3", "7", ...) and a matrix is a list of rows of integer codes
(element strings like "0xD" are accepted on the way in). Counts come back as
plain Python ints, however large.
"""

from ._mdsforge import (
    check_representative,
    compose,
    count,
    decompose,
    enumerate_matrices,
    field_info,
    format_element,
    inv3,
    involutory_certificate,
    involutory_member,
    is_involutory,
    is_mds,
    mds3,
    noninv3,
    parse_element,
    rep3,
    verify,
)

__all__ = [
    "check_representative",
    "compose",
    "count",
    "decompose",
    "enumerate_matrices",
    "field_info",
    "format_element",
    "inv3",
    "involutory_certificate",
    "involutory_member",
    "is_involutory",
    "is_mds",
    "mds3",
    "noninv3",
    "parse_element",
    "rep3",
    "verify",
]

__version__ = "1.0.0"
