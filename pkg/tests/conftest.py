import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from largeness.parsing import parse_presentation
from largeness.words import Word

settings.register_profile(
    "default",
    max_examples=100,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def words(rank: int = 2, max_runs: int = 8, max_exp: int = 3):
    run = st.tuples(st.integers(0, rank - 1), st.integers(-max_exp, max_exp).filter(bool))
    return st.lists(run, max_size=max_runs).map(lambda rs: Word(tuple(rs)))


def P(text: str):
    return parse_presentation(text)


BS = {
    (m, n): f"< a, t | t a^{m} t^-1 a^{-n} >" for m, n in [(1, 2), (2, 3), (2, 4), (6, 9), (1, -1), (1, 1)]
}
DELTA_T_MINUS_2 = "< a, t | t a^2 t^-1 a^-1 t a^-1 t^-1 a^-1 >"
BAUMSLAG_GERSTEN = "< a, t | t a t^-1 a t a^-1 t^-1 a^-2 >"
G0 = "< t, x, y, z | t x t^-1 y^-1, t y t^-1 z^-1, t z t^-1 (x y)^-1 >"
G0_WITNESS = ["x", "y", "z^2", "z x z^-1", "z y z^-1", "z t^-7"]
DOUBLED_G0 = "< t, a, b, c, x, y, z | t a t^-1 = b, t b t^-1 = c, t c t^-1 = a b, t x t^-1 = y, t y t^-1 = z, t z t^-1 = x y >"
PROABELIAN_B1_2 = "< a, t | [a,t][t,a^-1][a,t]^-1 = [t,a^-1]^2 >"
