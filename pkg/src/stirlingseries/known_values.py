"""Published exact values used as regression targets (canonical renderings)."""

from __future__ import annotations

from fractions import Fraction

# a_0..a_20, MacLaurin coefficients of y(v)
KNOWN_A = (
    "1/2*sqrt(2)",
    "-1/3",
    "1/12*sqrt(2)",
    "-4/135",
    "1/432*sqrt(2)",
    "4/2835",
    "-139/194400*sqrt(2)",
    "8/25515",
    "-571/32659200*sqrt(2)",
    "-1124/37889775",
    "163879/12345177600*sqrt(2)",
    "-41768/7388506125",
    "5246819/24443451648000*sqrt(2)",
    "43672/66496555125",
    "-534703531/1906589228544000*sqrt(2)",
    "1459313264/12463116844303125",
    "-4483131259/1372744244551680000*sqrt(2)",
    "-10603947212/710397660125278125",
    "432261921612371/69309856907414323200000*sqrt(2)",
    "-49374413464/19180736823382509375",
    "6232523202521089/110618531624233259827200000*sqrt(2)",
)

# c_0..c_10 of Gamma(s+1) ~ (s/e)^s sqrt(2 pi s) sum_k c_k s^-k
KNOWN_C = tuple(
    Fraction(x)
    for x in (
        "1",
        "1/12",
        "1/288",
        "-139/51840",
        "-571/2488320",
        "163879/209018880",
        "5246819/75246796800",
        "-534703531/902961561600",
        "-4483131259/86684309913600",
        "432261921612371/514904800886784000",
        "6232523202521089/86504006548979712000",
    )
)
