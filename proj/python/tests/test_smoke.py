import numpy as np
import pytest

import abelfft as af


def rand(n, seed):
    rng = np.random.default_rng(seed)
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def test_group_basics():
    g = af.Group([4, 2])
    assert g.size == 8
    assert g.orders == [4, 2]
    assert g.index_of([3, 1]) == 7
    assert g.element_of(7) == [3, 1]
    assert g.add(g.index_of([3, 1]), g.index_of([2, 1])) == g.index_of([1, 0])
    assert g.character(g.index_of([1, 0]), g.index_of([1, 0])) == pytest.approx(1j)
    with pytest.raises(af.Error):
        af.Group([0])


def test_fft_matches_numpy():
    g = af.Group([8, 9, 5])
    x = rand(g.size, 1)
    f = af.GFunction(g, af.Side.primal, x)
    expected = np.fft.fftn(x.reshape(8, 9, 5)).ravel()
    assert np.max(np.abs(af.fft_forward(f).values - expected)) < 1e-9
    assert np.max(np.abs(af.dft_naive(f).values - expected)) < 1e-9
    back = af.fft_inverse(af.fft_forward(f))
    assert back.side == af.Side.primal
    assert np.max(np.abs(back.values - x)) < 1e-12


def test_convolution_theorem():
    g = af.Group([6, 4])
    f = af.GFunction(g, af.Side.primal, rand(24, 2))
    h = af.GFunction(g, af.Side.primal, rand(24, 3))
    lhs = af.fft_forward(af.convolve(f, h)).values
    rhs = af.fft_forward(f).values * af.fft_forward(h).values
    assert np.max(np.abs(lhs - rhs)) < 1e-9
    assert np.max(np.abs(af.convolve_fast(f, h).values - af.convolve(f, h).values)) < 1e-9
    star = af.fft_forward(af.star(f)).values
    assert np.max(np.abs(star - af.involution(af.fft_forward(f)).values)) < 1e-9


def test_automorphisms():
    g = af.Group([2, 2])
    seen = {tuple(af.random_automorphism(g, s).perm) for s in range(200)}
    assert len(seen) == 6
    assert all(af.is_automorphism(list(p), g) for p in seen)
    assert not af.is_automorphism([0, 2, 1, 3], af.Group([4]))


@pytest.mark.parametrize("form", [af.OperatorForm.T, af.OperatorForm.U])
@pytest.mark.parametrize("conj", [False, True])
def test_recover_reference_operator(form, conj):
    g = af.Group([4, 3])
    psi = af.random_automorphism(g, 7)
    op = af.build_reference_operator(g, psi, conj, form)
    assert op.form == form
    assert af.check_hypotheses(op, trials=4, seed=1).passed
    report = af.recover(op)
    assert report.psi.perm == psi.perm
    assert report.conjugation == conj
    assert report.residual <= 1e-9
    assert report.diagnostics["homomorphism"] is True
    assert af.verify_recovery(op, report, trials=4, seed=2) <= 1e-9


def test_python_callable_operator():
    g = af.Group([5])
    perm = [0, 2, 4, 1, 3]  # x -> 2x

    def apply(f):
        v = f.values
        return af.GFunction(g, af.Side.primal, np.conj(v[perm]))

    op = af.Operator(g, af.Side.primal, af.Side.primal, apply)
    report = af.recover(op)
    assert report.psi.perm == perm
    assert report.conjugation is True


def test_rejects_all_ones():
    g = af.Group([3])
    op = af.Operator.from_matrix(g, af.Side.primal, af.Side.primal, np.ones((3, 3), dtype=complex))
    with pytest.raises(af.NotEssentiallyFourier):
        af.recover(op)
