import math

import numpy as np
import pytest
import sympy as sp

from qcdivide import (DEFAULT_BASES, DegenerateRatio, InvalidParameter,
                      MeasBasis, PureTwoQubitState, basis_from_k,
                      entangled_pair, exact_agreement, interference_free_agreement, joint_probs,
                      p_same, ratio_quantum, ratio_two_bases, rebase,
                      separation_interval, triple_summary)
from qcdivide.quantum import (COMPUTATIONAL, pnq_closed, psq_closed,
                              state_triple_summary)

INTRO_STATE = (0.9, -0.3, -0.1, -0.3)


def amp_oracle(amps, theta_left, theta_right):
    """<u_i v_j|psi> by explicit double sums, no matrix products."""
    def vecs(th):
        return [(math.cos(th), math.sin(th)), (-math.sin(th), math.cos(th))]
    psi = [[amps[0], amps[1]], [amps[2], amps[3]]]
    out = []
    for u in vecs(theta_left):
        for v in vecs(theta_right):
            out.append(sum(u[x] * v[y] * psi[x][y] for x in (0, 1) for y in (0, 1)))
    return out


def random_state(rng):
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    return PureTwoQubitState.from_amplitudes(v, normalize=True)


def test_entangled_pair_examples():
    h = 1 / math.sqrt(2)
    assert entangled_pair(1).amplitudes() == pytest.approx([h, 0, 0, h])
    assert entangled_pair(0).amplitudes() == pytest.approx([0, 0, 0, 1])
    assert entangled_pair(3).amplitudes() == pytest.approx([3 / math.sqrt(10), 0, 0, 1 / math.sqrt(10)])
    for bad in (-1.0, math.inf, math.nan):
        with pytest.raises(InvalidParameter):
            entangled_pair(bad)


def test_basis_from_k_angles():
    assert basis_from_k(2, "-").degrees == pytest.approx(-45)
    assert basis_from_k(3, "-").degrees == pytest.approx(-54.7356, abs=1e-4)
    assert basis_from_k(4, "-").degrees == pytest.approx(-60)
    assert basis_from_k(4, "+").degrees == pytest.approx(60)
    assert basis_from_k(1).theta == 0.0
    with pytest.raises(InvalidParameter):
        basis_from_k(0.5)


def test_k_round_trip_and_orthonormality(rng):
    for theta in rng.uniform(-math.pi / 2 + 1e-6, math.pi / 2, 200):
        b = MeasBasis(theta)
        v = b.vectors()
        assert v @ v.T == pytest.approx(np.eye(2), abs=1e-12)
        if theta <= 0:
            assert basis_from_k(b.k, "-").theta == pytest.approx(theta, abs=1e-7)


def test_k_basis_vectors_match_frames_at_sixty_degrees():
    b = basis_from_k(4, "-").vectors()
    assert b[0] == pytest.approx([0.5, -math.sqrt(3) / 2])
    assert b[1] == pytest.approx([math.sqrt(3) / 2, 0.5])
    c = basis_from_k(4, "+").vectors()
    assert c[0] == pytest.approx([0.5, math.sqrt(3) / 2])
    # Second vector agrees up to a global sign.
    assert -c[1] == pytest.approx([math.sqrt(3) / 2, -0.5])


def test_rebase_matches_oracle(rng):
    for _ in range(200):
        st = random_state(rng)
        tl, tr = rng.uniform(-math.pi / 2 + 1e-9, math.pi / 2, 2)
        got = rebase(st, MeasBasis(tl), MeasBasis(tr)).amplitudes()
        assert got == pytest.approx(amp_oracle(st.amplitudes(), tl, tr), abs=1e-12)
        assert np.sum(np.abs(got) ** 2) == pytest.approx(1.0, abs=1e-12)


def test_rebase_identity():
    st = PureTwoQubitState.from_amplitudes(INTRO_STATE)
    assert rebase(st, COMPUTATIONAL, COMPUTATIONAL).amplitudes() == pytest.approx(st.amplitudes())


@pytest.mark.parametrize("r", [0.0, 0.3, 1.0, 4.0])
@pytest.mark.parametrize("k", [1.5, 2.0, 4.0])
def test_rebase_computational_vs_k(r, k):
    got = rebase(entangled_pair(r), COMPUTATIONAL, basis_from_k(k, "-")).amplitudes()
    s = math.sqrt(k - 1)
    expected = np.array([r, -r * s, s, 1.0]) / math.sqrt(k * (1 + r * r))
    # Cross-term signs depend on the rotation convention; magnitudes do not.
    assert np.abs(got) == pytest.approx(np.abs(expected), abs=1e-12)


@pytest.mark.parametrize("r", [0.0, 0.5, 1.0, 2.0, 7.0])
def test_rebase_b_c_frames(r):
    got = rebase(entangled_pair(r), basis_from_k(4, "-"), basis_from_k(4, "+")).amplitudes()
    q = math.sqrt(3)
    expected = np.array([(r - 3) / 4, q * (r + 1) / 4, -q * (r + 1) / 4, (3 * r - 1) / 4]) / math.sqrt(1 + r * r)
    assert np.abs(got) == pytest.approx(np.abs(expected), abs=1e-12)


def test_maximally_entangled_basis_invariance(rng):
    h = 1 / math.sqrt(2)
    for theta in rng.uniform(-math.pi / 2 + 1e-9, math.pi / 2, 100):
        b = MeasBasis(theta)
        amps = rebase(entangled_pair(1), b, b).amplitudes()
        assert abs(amps[1]) < 1e-12 and abs(amps[2]) < 1e-12
        assert amps[0] == pytest.approx(amps[3], abs=1e-12)
        assert abs(amps[0]) == pytest.approx(h, abs=1e-12)


def test_joint_probs_examples():
    intro = PureTwoQubitState.from_amplitudes(INTRO_STATE)
    p = joint_probs(intro, COMPUTATIONAL, COMPUTATIONAL)
    assert p[1] == pytest.approx(0.09, abs=1e-12)
    assert p[2] == pytest.approx(0.01, abs=1e-12)
    assert joint_probs(entangled_pair(1), COMPUTATIONAL, basis_from_k(4, "-")) == pytest.approx(
        [1 / 8, 3 / 8, 3 / 8, 1 / 8], abs=1e-12)


def test_sign_flip_invariance(rng):
    st = random_state(rng)
    b = MeasBasis(0.4)
    for flip in ([[-1], [1]], [[1], [-1]]):
        flipped = b.vectors() * np.array(flip)
        left = np.abs(np.kron(flipped, np.eye(2)) @ st.amplitudes()) ** 2
        right = np.abs(np.kron(np.eye(2), flipped) @ st.amplitudes()) ** 2
        assert left == pytest.approx(joint_probs(st, b, COMPUTATIONAL), abs=1e-12)
        assert right == pytest.approx(joint_probs(st, COMPUTATIONAL, b), abs=1e-12)


@pytest.mark.parametrize("r", [0.0, 0.2, 1.0, 5.0, 50.0])
def test_p_same_one_over_k(r):
    for k in (1.5, 2, 3, 4, 10):
        assert p_same(entangled_pair(r), COMPUTATIONAL, basis_from_k(k, "-")) == pytest.approx(1 / k, abs=1e-12)


def test_p_same_equal_bases_maximal():
    for theta in (-1.0, 0.0, 0.7):
        b = MeasBasis(theta)
        assert p_same(entangled_pair(1), b, b) == pytest.approx(1.0, abs=1e-12)


def test_ratio_two_bases():
    assert ratio_two_bases(2) == 1
    assert ratio_two_bases(4) == pytest.approx(1 / 3)
    with pytest.raises(DegenerateRatio):
        ratio_two_bases(1)


def test_triple_summary_examples():
    s = triple_summary(1.0)
    assert s.p_same == pytest.approx((0.25,) * 3, abs=1e-12)
    assert s.p_s_total == pytest.approx(0.75, abs=1e-12)
    assert s.p_n_total == pytest.approx(2.25, abs=1e-12)
    assert triple_summary(3 + 2 * math.sqrt(2)).p_s_total == pytest.approx(1.0, abs=1e-9)
    assert triple_summary(0.0).p_s_total == pytest.approx(9 / 8, abs=1e-12)


def test_ratio_quantum_examples():
    assert ratio_quantum(1) == pytest.approx(1 / 3, abs=1e-15)
    assert ratio_quantum(0) == pytest.approx(3 / 5, abs=1e-15)
    assert ratio_quantum(2) == pytest.approx(ratio_quantum(0.5), abs=1e-15)


def test_separation_interval():
    lo, hi = separation_interval()
    for x in (lo, hi):
        assert abs(x * x - 6 * x + 1) <= 1e-12
    assert lo * hi == pytest.approx(1.0, abs=1e-12)
    assert (lo, hi) == pytest.approx((0.171573, 5.828427), abs=1e-6)


def test_bell_violation_region_on_grid():
    lo, hi = separation_interval()
    for r in np.round(np.arange(0, 10.0001, 0.01), 10):
        s = triple_summary(r)
        assert (s.p_s_total < 1) == (lo < r < hi)
        assert (s.ratio < 0.5) == (lo < r < hi)


def test_closed_forms_match_symbolic_derivation():
    r = sp.symbols("r", nonnegative=True)
    q = sp.sqrt(3)
    a = [sp.Matrix([1, 0]), sp.Matrix([0, 1])]
    b = [sp.Matrix([sp.Rational(1, 2), -q / 2]), sp.Matrix([q / 2, sp.Rational(1, 2)])]
    c = [sp.Matrix([sp.Rational(1, 2), q / 2]), sp.Matrix([-q / 2, sp.Rational(1, 2)])]
    psi = sp.Matrix([r, 0, 0, 1]) / sp.sqrt(1 + r ** 2)

    def same(x, y):
        amp = lambda i, j: (sp.kronecker_product(x[i], y[j]).T * psi)[0]
        return sp.simplify(amp(0, 0) ** 2 + amp(1, 1) ** 2)

    psq = sp.simplify(same(a, b) + same(a, c) + same(b, c))
    assert sp.simplify(same(a, b) - sp.Rational(1, 4)) == 0
    assert sp.simplify(same(b, c) - (5 * r ** 2 - 6 * r + 5) / (8 * (1 + r ** 2))) == 0
    assert sp.simplify(psq - (sp.Rational(1, 2) + (5 * r ** 2 - 6 * r + 5) / (8 * (1 + r ** 2)))) == 0
    assert sp.simplify(3 - psq - (15 * r ** 2 + 6 * r + 15) / (8 * (1 + r ** 2))) == 0
    assert sp.simplify(psq / (3 - psq) - (3 * r ** 2 - 2 * r + 3) / (5 * r ** 2 + 2 * r + 5)) == 0
    assert sp.solve(sp.Eq(psq, 1), r) == [3 - 2 * sp.sqrt(2), 3 + 2 * sp.sqrt(2)]


def test_closed_forms_match_engine():
    for r in np.round(np.arange(0, 10.0001, 0.01), 10):
        s = triple_summary(r)
        assert abs(s.p_s_total - psq_closed(r)) <= 1e-12
        assert abs(s.p_n_total - pnq_closed(r)) <= 1e-12
        assert abs(s.ratio - ratio_quantum(r)) <= 1e-12


def test_agreement_formula_examples():
    assert interference_free_agreement(0.5, 0.5, 0.5, 0.5, 2) == pytest.approx(0.5)
    assert exact_agreement(0.5, 0.5, 0.5, 0.5, 2) == pytest.approx(0.5, abs=1e-12)
    h = math.sqrt(0.5)
    assert interference_free_agreement(h, h, 0, 0, 2) == pytest.approx(0.5)
    assert exact_agreement(h, h, 0, 0, 2) == pytest.approx(0.0, abs=1e-12)
    for r in (0.0, 1.0, 3.0):
        amps = entangled_pair(r).amplitudes().real
        for k in (1.5, 2, 4):
            assert interference_free_agreement(*amps, k) == pytest.approx(1 / k, abs=1e-12)
            assert exact_agreement(*amps, k) == pytest.approx(1 / k, abs=1e-12)


def test_agreement_formula_gap_is_interference_term(rng):
    for _ in range(200):
        v = rng.normal(size=4)
        a, b, c, d = v / np.linalg.norm(v)
        k = rng.uniform(1, 10)
        gap = interference_free_agreement(a, b, c, d, k) - exact_agreement(a, b, c, d, k)
        expected = (2 * a * b - 2 * c * d) * math.sqrt(k - 1) / k
        assert gap == pytest.approx(expected, abs=1e-12)


def test_state_triple_summary_general_state():
    st = PureTwoQubitState.from_amplitudes(INTRO_STATE)
    s = state_triple_summary(st, DEFAULT_BASES)
    assert s.p_s_total + s.p_n_total == pytest.approx(3.0, abs=1e-12)


def test_state_rejects_unnormalized():
    with pytest.raises(ValueError):
        PureTwoQubitState(1, 1, 0, 0)
