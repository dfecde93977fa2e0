"""Independent oracles used by the test suite."""
import itertools

from pscatter.stable import normalize
from pscatter.terms import PT, Cone, Mult, build_i, build_J, make_sum


def stable_level3_count() -> int:
    """Number of rank-3 stable sets, by brute force over slice tau-vectors.

    A rank-3 slice is tau_0*pt + tau_1*i(2) + tau_2*J(2) with each tau in
    {0, w, w1} and some rank-2 coefficient nonzero; cones over slices with
    one normal form are homeomorphic.
    """
    lower = [PT, build_i(2), build_J(2)]
    taus = [Mult(0), Mult.of("w"), Mult.of("w1")]
    forms = set()
    for vec in itertools.product(taus, repeat=3):
        if vec[1] == Mult(0) and vec[2] == Mult(0):
            continue
        S = make_sum((t, Y) for t, Y in zip(vec, lower) if t != Mult(0))
        forms.add(normalize(Cone(S)))
    return len(forms)
