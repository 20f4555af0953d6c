from fractions import Fraction
from itertools import combinations
from typing import Dict

import pytest

from app.domain.amplitude_map import AmplitudeMap
from app.domain.exact import RadicalSum, SqrtRational
from app.domain.repr_state import ReprStateSU3, enumerate_states
from app.domain.schur_label import enumerate_labels, quark_content, su3_label
from app.errors import LabelError
from app.services.su3_engine import (
    SU3Term,
    apply_ucg_inv_su3,
    decompose_su3,
    isospin_coupling,
    ladder_apply,
    quark_counts,
    rotation_matrices,
    step_rotation_for,
)

DIGITS = {"u": "2", "d": "1", "s": "0"}


def root(value: Fraction, sign: int = 1) -> SqrtRational:
    return SqrtRational(sign, value)


def quark_map(amplitudes: Dict[str, SqrtRational]) -> AmplitudeMap:
    n = len(next(iter(amplitudes)))
    return AmplitudeMap(3, n, {"".join(DIGITS[q] for q in key): value for key, value in amplitudes.items()})


def apply_operator(op: str, vector: Dict[ReprStateSU3, RadicalSum]) -> Dict[ReprStateSU3, RadicalSum]:
    result: Dict[ReprStateSU3, RadicalSum] = {}
    for state, amplitude in vector.items():
        for target, coeff in ladder_apply(op, state):
            result[target] = result.get(target, RadicalSum.zero()) + amplitude * coeff
    return result


def commutator(raise_op: str, lower_op: str, state: ReprStateSU3) -> Dict[ReprStateSU3, RadicalSum]:
    start = {state: RadicalSum.of(1)}
    first = apply_operator(raise_op, apply_operator(lower_op, start))
    second = apply_operator(lower_op, apply_operator(raise_op, start))
    keys = set(first) | set(second)
    difference = {key: first.get(key, RadicalSum.zero()) - second.get(key, RadicalSum.zero()) for key in keys}
    return {key: value for key, value in difference.items() if not value.is_zero()}


def irreps(max_sum: int = 3) -> list:
    return [(P, Q) for P in range(max_sum + 1) for Q in range(max_sum + 1 - P)]


class TestLadder:
    def test_isospin_top_is_annihilated_by_t_plus(self) -> None:
        """Test T+ on k=m states"""
        for P, Q in irreps():
            for state in enumerate_states(P, Q):
                if state.is_isospin_top():
                    assert ladder_apply("T+", state) == []

    def test_highest_weight_is_annihilated(self) -> None:
        """Test V+ and T+ on the highest weight"""
        for P, Q in irreps():
            top = ReprStateSU3(P, Q, P + Q, 0, P + Q)
            assert ladder_apply("V+", top) == []
            assert ladder_apply("T+", top) == []

    def test_u_to_d(self) -> None:
        """Test T- turns u into d"""
        assert ladder_apply("T-", ReprStateSU3(1, 0, 1, 0, 1)) == [(ReprStateSU3(1, 0, 1, 0, 0), SqrtRational.one())]

    def test_unknown_operator(self) -> None:
        """Test that unknown operators raise"""
        with pytest.raises(ValueError):
            ladder_apply("W+", ReprStateSU3(1, 0, 1, 0, 1))

    @pytest.mark.parametrize("P,Q", irreps())
    def test_commutators(self, P: int, Q: int) -> None:
        """Test [T+,T-]=2T3, [U+,U-]=3Y/2-T3 and [V+,V-]=3Y/2+T3 on every state"""
        for state in enumerate_states(P, Q):
            _, two_t3, three_y = state.tty()
            expected = {
                ("T+", "T-"): Fraction(two_t3),
                ("U+", "U-"): Fraction(three_y - two_t3, 2),
                ("V+", "V-"): Fraction(three_y + two_t3, 2),
            }
            for (raise_op, lower_op), value in expected.items():
                result = commutator(raise_op, lower_op, state)
                if value == 0:
                    assert result == {}
                else:
                    assert result == {state: RadicalSum.of(value)}


class TestRotationMatrices:
    def test_symmetric_first_step(self) -> None:
        """Test the isoscalar and isospin parts of the symmetric uds step"""
        step = rotation_matrices(2, 0, 2, 0, 1)
        assert step.isoscalar.entry("p=2", "sigma") == root(Fraction(2, 3))
        assert step.isoscalar.entry("p=2", "rho").is_zero()
        assert step.isoscalar.entry("p=2", "strange") == root(Fraction(1, 3))
        assert step.isospin.entry("sigma", "sigma:u") == root(Fraction(1, 2))
        assert step.isospin.entry("sigma", "sigma:d") == root(Fraction(1, 2))
        assert step.combined.entry("p=2", "sigma:u") == root(Fraction(1, 3))

    def test_singlet_uses_rho(self) -> None:
        """Test that the antisymmetric step goes through the rho channel"""
        step = rotation_matrices(0, 1, 1, 1, 1)
        assert step.isoscalar.entry("p=0", "sigma").is_zero()
        assert step.isoscalar.entry("p=0", "rho") == root(Fraction(2, 3))
        assert step.combined.entry("p=0", "rho:u") == root(Fraction(1, 3), -1)
        assert step.combined.entry("p=0", "rho:d") == root(Fraction(1, 3))

    def test_degenerate_sigma(self) -> None:
        """Test that an isospin singlet has no sigma coupling"""
        coupling = isospin_coupling("sigma", 1, 1, 1)
        assert all(value.is_zero() for value in coupling.values())

    def test_bad_parent_frame(self) -> None:
        """Test that unordered (k,l,m) raise"""
        with pytest.raises(LabelError):
            rotation_matrices(1, 0, 1, 0, 2)

    @pytest.mark.parametrize("n", range(2, 5))
    def test_factorization_and_unitarity(self, n: int) -> None:
        """Test R(theta,F) = R(F) R(theta) and orthonormal rows on every first step"""
        for label in enumerate_labels(n, 3):
            step = step_rotation_for(SU3Term.from_label(label))
            assert step.factorizes()
            assert step.isoscalar.rows_orthonormal()
            assert step.combined.rows_orthonormal()

    def test_report_form(self) -> None:
        """Test the dict form of the step matrices"""
        data = rotation_matrices(2, 0, 2, 0, 1).to_dict()
        assert data["combined"]["rows"] == ["p=2", "p=1", "p=0"]
        assert data["combined"]["columns"] == ["sigma:u", "sigma:d", "rho:u", "rho:d", "strange:s"]


class TestApplyUcgInvSu3:
    def test_symmetric_step(self) -> None:
        """Test the first step of the fully symmetric uds state"""
        branches = apply_ucg_inv_su3(SU3Term.from_label(su3_label((3, 0, 0), (2, 0, 1), (2, 2))))
        by_output = {term.outputs: term for term in branches}
        assert set(by_output) == {(2,), (1,), (0,)}
        assert all(term.amplitude == RadicalSum.of(root(Fraction(1, 3))) for term in branches)
        assert all(term.rows == (2, 0, 0) for term in branches)
        assert (by_output[(2,)].k, by_output[(2,)].l, by_output[(2,)].m) == (1, 0, 0)
        assert (by_output[(1,)].k, by_output[(1,)].l, by_output[(1,)].m) == (1, 0, 1)
        assert (by_output[(0,)].k, by_output[(0,)].l, by_output[(0,)].m) == (2, 0, 1)

    def test_mixed_step(self) -> None:
        """Test the second-row step of the mixed-symmetry state"""
        branches = apply_ucg_inv_su3(SU3Term.from_label(su3_label((2, 1, 0), (2, 0, 1), (2, 1))))
        by_output = {term.outputs: term.amplitude for term in branches}
        assert by_output[(0,)] == RadicalSum.of(root(Fraction(2, 3)))
        assert by_output[(2,)] == RadicalSum.of(root(Fraction(1, 6), -1))
        assert by_output[(1,)] == RadicalSum.of(root(Fraction(1, 6), -1))

    def test_singlet_step(self) -> None:
        """Test the third-row step of the antisymmetric state"""
        branches = apply_ucg_inv_su3(SU3Term.from_label(su3_label((1, 1, 1), (0, 0, 0), (1, 0))))
        by_output = {term.outputs: term for term in branches}
        third = root(Fraction(1, 3))
        assert by_output[(2,)].amplitude == RadicalSum.of(-third)
        assert by_output[(1,)].amplitude == RadicalSum.of(third)
        assert by_output[(0,)].amplitude == RadicalSum.of(third)
        assert (by_output[(0,)].k, by_output[(0,)].l, by_output[(0,)].m) == (1, 1, 1)

    def test_step_norm(self) -> None:
        """Test that every first step preserves the squared norm"""
        for label in enumerate_labels(4, 3):
            branches = apply_ucg_inv_su3(SU3Term.from_label(label))
            total = RadicalSum.zero()
            for term in branches:
                total = total + term.amplitude.square()
            assert total == 1

    def test_no_path_left(self) -> None:
        """Test that a finished term cannot be expanded"""
        term = SU3Term((1, 0, 0), 1, 0, 1, (), (2,), RadicalSum.of(1))
        assert term.key == "22"
        with pytest.raises(LabelError):
            apply_ucg_inv_su3(term)


class TestDecomposeSu3:
    def test_symmetric_uds(self) -> None:
        """Test the fully symmetric state with one quark of each flavour"""
        sixth = root(Fraction(1, 6))
        expected = quark_map({key: sixth for key in ("uds", "dus", "usd", "sud", "sdu", "dsu")})
        assert decompose_su3(su3_label((3, 0, 0), (2, 0, 1), (2, 2))) == expected

    def test_mixed_through_symmetric_pair(self) -> None:
        """Test the mixed-symmetry state built on a symmetric pair"""
        third, twelfth = root(Fraction(1, 3)), root(Fraction(1, 12), -1)
        expected = quark_map(
            {"dus": third, "uds": third, "usd": twelfth, "sud": twelfth, "dsu": twelfth, "sdu": twelfth}
        )
        assert decompose_su3(su3_label((2, 1, 0), (2, 0, 1), (2, 1))) == expected

    def test_mixed_through_antisymmetric_pair(self) -> None:
        """Test the mixed-symmetry state built on an antisymmetric pair"""
        twelfth, third = root(Fraction(1, 12)), root(Fraction(1, 3))
        expected = quark_map(
            {"dsu": twelfth, "sdu": -twelfth, "sud": twelfth, "usd": -twelfth, "dus": third, "uds": -third}
        )
        assert decompose_su3(su3_label((2, 1, 0), (1, 1, 1), (1, 2))) == expected

    def test_singlet(self) -> None:
        """Test the totally antisymmetric state"""
        sixth = root(Fraction(1, 6))
        expected = quark_map(
            {"sdu": sixth, "dsu": -sixth, "sud": -sixth, "usd": sixth, "dus": sixth, "uds": -sixth}
        )
        assert decompose_su3(su3_label((1, 1, 1), (0, 0, 0), (1, 0))) == expected

    @pytest.mark.parametrize(
        "rows,klm,path,amplitudes",
        [
            ((3, 0, 0), (3, 0, 3), (2, 2), {"uuu": SqrtRational.one()}),
            ((3, 0, 0), (2, 0, 2), (2, 2), {"uus": root(Fraction(1, 3)), "usu": root(Fraction(1, 3)),
                                           "suu": root(Fraction(1, 3))}),
            ((2, 1, 0), (2, 0, 2), (2, 1), {"usu": root(Fraction(1, 6)), "suu": root(Fraction(1, 6)),
                                           "uus": root(Fraction(2, 3), -1)}),
            ((2, 1, 0), (1, 1, 1), (2, 1), {"sud": root(Fraction(1, 4)), "sdu": root(Fraction(1, 4), -1),
                                           "usd": root(Fraction(1, 4)), "dsu": root(Fraction(1, 4), -1)}),
            ((2, 1, 0), (2, 0, 2), (1, 2), {"usu": root(Fraction(1, 2)), "suu": root(Fraction(1, 2), -1)}),
            ((2, 1, 0), (2, 0, 1), (1, 2), {"sud": root(Fraction(1, 4)), "sdu": root(Fraction(1, 4)),
                                           "usd": root(Fraction(1, 4), -1), "dsu": root(Fraction(1, 4), -1)}),
            ((1, 1, 1), (0, 0, 0), (1, 0), {"uds": root(Fraction(1, 6)), "dsu": root(Fraction(1, 6)),
                                           "sud": root(Fraction(1, 6)), "sdu": root(Fraction(1, 6), -1),
                                           "dus": root(Fraction(1, 6), -1), "usd": root(Fraction(1, 6), -1)}),
        ],
    )
    def test_baryon_table(self, rows: tuple, klm: tuple, path: tuple, amplitudes: dict) -> None:
        """Test three-quark states against the baryon table up to a global sign"""
        assert decompose_su3(su3_label(rows, klm, path)).equals_up_to_sign(quark_map(amplitudes))

    def test_single_quark(self) -> None:
        """Test that n=1 maps the weight to its digit"""
        assert decompose_su3(su3_label((1, 0, 0), (1, 0, 0), ())) == quark_map({"d": SqrtRational.one()})

    @pytest.mark.parametrize("n", range(1, 6))
    def test_norm_and_quark_content(self, n: int) -> None:
        """Test unit norm and conserved quark numbers"""
        for label in enumerate_labels(n, 3):
            amplitudes = decompose_su3(label)
            assert amplitudes.norm_squared() == 1
            content = quark_content(label)
            assert all(quark_counts(key) == content for key in amplitudes)

    @pytest.mark.parametrize("n", range(2, 5))
    def test_orthogonality(self, n: int) -> None:
        """Test that distinct labels give orthogonal states"""
        maps = [decompose_su3(label) for label in enumerate_labels(n, 3)]
        for first, second in combinations(maps, 2):
            if set(first.keys()) & set(second.keys()):
                assert first.inner(second) == RadicalSum.zero()

    def test_completeness(self) -> None:
        """Test that the three-quark states resolve the identity on every string"""
        weights: Dict[str, RadicalSum] = {}
        for label in enumerate_labels(3, 3):
            for key, amplitude in decompose_su3(label).items():
                weights[key] = weights.get(key, RadicalSum.zero()) + amplitude * amplitude  # type: ignore[operator]
        assert len(weights) == 27
        assert all(value == 1 for value in weights.values())
