# Primitive polynomials for GF(p^e), e >= 2, q = p^e <= 2^16.
#
# Each entry lists the lower coefficients (c_0, ..., c_{e-1}) of the monic
# polynomial x^e + c_{e-1} x^{e-1} + ... + c_0.  For each q the entry is the
# primitive polynomial with the smallest code sum(c_j p^j); see
# tests/test_galois.py for the check that regenerates this rule.
PRIMITIVE_POLYNOMIALS: dict[int, tuple[int, ...]] = {
    4: (1, 1),
    8: (1, 1, 0),
    9: (2, 1),
    16: (1, 1, 0, 0),
    25: (2, 1),
    27: (1, 2, 0),
    32: (1, 0, 1, 0, 0),
    49: (3, 1),
    64: (1, 1, 0, 0, 0, 0),
    81: (2, 1, 0, 0),
    121: (7, 1),
    125: (2, 3, 0),
    128: (1, 1, 0, 0, 0, 0, 0),
    169: (2, 1),
    243: (1, 2, 0, 0, 0),
    256: (1, 0, 1, 1, 1, 0, 0, 0),
    289: (3, 1),
    343: (2, 3, 0),
    361: (2, 1),
    512: (1, 0, 0, 0, 1, 0, 0, 0, 0),
    529: (7, 1),
    625: (2, 2, 1, 0),
    729: (2, 1, 0, 0, 0, 0),
    841: (3, 1),
    961: (12, 1),
    1024: (1, 0, 0, 1, 0, 0, 0, 0, 0, 0),
    1331: (4, 1, 0),
    1369: (5, 1),
    1681: (12, 1),
    1849: (3, 1),
    2048: (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0),
    2187: (1, 2, 1, 0, 0, 0, 0),
    2197: (6, 1, 0),
    2209: (13, 1),
    2401: (5, 3, 1, 0),
    2809: (5, 1),
    3125: (2, 4, 0, 0, 0),
    3481: (2, 1),
    3721: (2, 1),
    4096: (1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0),
    4489: (12, 1),
    4913: (3, 1, 0),
    5041: (11, 1),
    5329: (11, 1),
    6241: (3, 1),
    6561: (2, 0, 0, 1, 0, 0, 0, 0),
    6859: (4, 1, 0),
    6889: (2, 1),
    7921: (6, 1),
    8192: (1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0),
    9409: (5, 1),
    10201: (3, 1),
    10609: (5, 1),
    11449: (5, 1),
    11881: (6, 1),
    12167: (3, 1, 0),
    12769: (10, 1),
    14641: (2, 1, 0, 0),
    15625: (2, 1, 0, 0, 0, 0),
    16129: (3, 1),
    16384: (1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0),
    16807: (4, 1, 0, 0, 0),
    17161: (14, 1),
    18769: (6, 1),
    19321: (2, 1),
    19683: (1, 0, 1, 2, 0, 0, 0, 0, 0),
    22201: (3, 1),
    22801: (12, 1),
    24389: (11, 1, 0),
    24649: (6, 1),
    26569: (11, 1),
    27889: (5, 1),
    28561: (2, 1, 1, 0),
    29791: (14, 1, 0),
    29929: (5, 1),
    32041: (7, 1),
    32761: (18, 1),
    32768: (1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    36481: (19, 1),
    37249: (5, 1),
    38809: (3, 1),
    39601: (6, 1),
    44521: (3, 1),
    49729: (5, 1),
    50653: (13, 1, 0),
    51529: (5, 1),
    52441: (6, 1),
    54289: (3, 1),
    57121: (13, 1),
    58081: (13, 1),
    59049: (2, 1, 0, 1, 0, 0, 0, 0, 0, 0),
    63001: (19, 1),
    65536: (1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
}
