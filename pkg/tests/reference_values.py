"""Frozen reference values used by the test suite.

Exact rationals transcribed from the published tables, plus derived oracle
values frozen after independent computation.
"""

from fractions import Fraction

# min/max sandwich coefficients of the degree-28 certificate polynomial on
# [0, 1], transcribed from the published table
SANDWICH_BOUNDS = [
    Fraction(4038947756777593110528000000),
    Fraction(4341868838535912593817600000),
    Fraction(4616792938622805973401600000),
    Fraction(63226968447497701058150400000, 13),
    Fraction(66072098066989847041120665600, 13),
    Fraction(68558326435040659929169920000, 13),
    Fraction(1625932364702092812073304064000, 299),
    Fraction(18338550757492925804643090432000, 3289),
    Fraction(18707897201998227336080916480000, 3289),
    Fraction(18996421971796176266488102256640, 3289),
    Fraction(364943527309321738804310099558400, 62491),
    Fraction(33414027455107862233493347123200, 5681),
    Fraction(570021720890042639974424894668800, 96577),
    Fraction(43851581059726626552866155622400, 7429),
    Fraction(43715751783929803366617869881344, 7429),
    Fraction(43449666570024250746295234195200, 7429),
    Fraction(29463945191749248714150342727680, 5083),
    Fraction(32549053609077425759197656000000, 5681),
    Fraction(352985157442262967317198674456320, 62491),
    Fraction(91354286436246580611619508370624, 16445),
    Fraction(17926195304232242164107747202432, 3289),
    Fraction(17548009393294868476730762864424, 3289),
    Fraction(67747076984066766537183527176, 13),
    Fraction(66030748681802854683680196472, 13),
    Fraction(4816825337954730130116871131704, 975),
    Fraction(62340864945822949546899440674, 13),
    Fraction(292672542741083383435627679675, 63),
    Fraction(125766913766925341535184862941, 28),
    Fraction(4334548991696365872138512296),
]

# quintic whose unique positive root separates sign regions: the negated
# odd-order bound denominator, bracketing values -864 at 6 and 608 at 8
ROOT_QUINTIC = [-30240, 15120, -3360, 420, -30, 1]

# sign-analysis quartics/quintic from the ladder positivity remarks
LADDER_QUARTIC_1 = [-756, 12, 323, 36, 1]
LADDER_QUARTIC_2 = [252, 24, -99, 10, 1]
LADDER_QUINTIC_3 = [-1728, -825, 407, 278, 58, 4]
