import itertools
from fractions import Fraction as F

import pytest

from mdl_lab.errors import AlphabetMismatchError, SamplingError
from mdl_lab.measures import (
    BINARY,
    Alphabet,
    DeterministicModel,
    FactorizableModel,
    IidModel,
    LeakySemimeasure,
    OscillatingMartingaleMeasure,
    check_semimeasure,
    derived_rng,
    example3_pair,
    example5_pair,
    make_example4_pair,
    sample_path,
    sample_sequence,
)

ALL_WORDS_12 = [
    bits for n in range(13) for bits in itertools.product((0, 1), repeat=n)
]


def family_zoo():
    return [
        IidModel((F(1, 2), F(1, 2))),
        IidModel((F(1, 3), F(2, 3))),
        DeterministicModel((1,), (0,)),
        DeterministicModel((), (1,)),
        FactorizableModel.from_steps(
            BINARY, [(F(1, 4), F(3, 4)), (F(1), F(0))], (F(1, 2), F(1, 2))
        ),
        OscillatingMartingaleMeasure(),
        LeakySemimeasure(IidModel((F(1, 2), F(1, 2))), F(1, 4)),
        make_example4_pair()[0],
        make_example4_pair()[1],
    ]


class TestEvaluate:
    def test_fair_coin_product(self):
        assert IidModel((F(1, 2), F(1, 2))).evaluate("110") == F(1, 8)

    def test_deterministic_not_prefix(self):
        assert DeterministicModel((), (1,)).evaluate("10") == 0

    def test_martingale_at_zero(self):
        # First recursion step: f(0) = 3/4 - 2^-3, nu(0) = f(0)/2.
        m = OscillatingMartingaleMeasure()
        assert m.f_value("0") == F(3, 4) - F(1, 8)
        assert m.evaluate("0") == F(5, 16)

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetMismatchError):
            IidModel((F(1, 2), F(1, 2))).evaluate("102")

    def test_logfloat_agrees_with_exact_to_depth_12(self):
        for model in family_zoo():
            for word in ALL_WORDS_12:
                exact = model.evaluate_exact(word)
                lf = model.log_evaluate(word)
                if exact == 0:
                    assert lf.is_zero
                else:
                    assert abs(float(lf) - float(exact)) <= 1e-9 * float(exact)


class TestConditional:
    def test_iid(self):
        assert IidModel((F(1, 4), F(3, 4))).conditional(1, "00") == F(3, 4)

    def test_deterministic_off_path(self):
        assert DeterministicModel((), (1,)).conditional(0, "11") == 0

    def test_zero_history_convention(self):
        assert DeterministicModel((), (1,)).conditional(1, "00") == 0

    def test_example4_nu_first_step(self):
        _, nu = make_example4_pair()
        assert nu.conditional(1, ()) == F(1, 2)


class TestCursors:
    def test_cursor_matches_evaluate(self):
        for model in family_zoo():
            cur = model.cursor()
            prefix = ()
            for symbol in (1, 0, 1, 1, 0):
                for a in (0, 1):
                    assert cur.child_value(a) == model.evaluate_exact(prefix + (a,))
                cur = cur.advance(symbol)
                prefix += (symbol,)
                assert cur.value == model.evaluate_exact(prefix)


class TestStructure:
    def test_iid_all_equalities(self):
        report = check_semimeasure(IidModel((F(1, 3), F(2, 3))), 6)
        assert report.passed and report.all_equalities

    def test_leaky_strict(self):
        base = IidModel((F(1, 2), F(1, 2)))
        leaky = LeakySemimeasure(base, F(1, 4))
        report = check_semimeasure(leaky, 5)
        assert report.passed and not report.all_equalities
        # Per-step leak: children sum to exactly (1 - gamma) * value.
        cur = leaky.cursor()
        assert cur.child_value(0) + cur.child_value(1) == F(3, 4) * cur.value

    def test_martingale_measure_to_depth_10(self):
        report = check_semimeasure(OscillatingMartingaleMeasure(), 10)
        assert report.passed and report.all_equalities

    def test_semimeasure_inequality_all_families_depth_8(self):
        for model in family_zoo():
            report = check_semimeasure(model, 8)
            assert report.passed, (model, report)
            assert report.all_equalities == model.is_proper_measure

    def test_violation_reported_with_witness(self):
        class Broken(IidModel):
            def evaluate_exact(self, x):
                if x == (1, 1):
                    return F(2)  # exceeds the parent mass
                return super().evaluate_exact(x)

            def cursor(self):
                from mdl_lab.measures import _GenericCursor

                return _GenericCursor(self, ())

        report = check_semimeasure(Broken((F(1, 2), F(1, 2))), 4)
        assert not report.passed
        assert report.violation_at == (1,)


class TestMartingale:
    def test_identity_exact_to_depth_8(self):
        m = OscillatingMartingaleMeasure()
        for n in range(8):
            for bits in itertools.product((0, 1), repeat=n):
                f = m.f_value(bits)
                assert 2 * f == m.f_value(bits + (0,)) + m.f_value(bits + (1,))

    def test_figure_nodes(self):
        # 000 is the first dead string; every other length-<=3 node is alive.
        m = OscillatingMartingaleMeasure()
        assert m.is_dead("000")
        for n in range(4):
            for bits in itertools.product((0, 1), repeat=n):
                if bits != (0, 0, 0):
                    assert not m.is_dead(bits), bits

    def test_dead_value_freezes(self):
        m = OscillatingMartingaleMeasure()
        f = m.f_value("000")
        for suffix in ("0", "1", "01", "10", "111"):
            assert m.f_value("000" + suffix) == f
            assert m.is_dead("000" + suffix)

    def test_dead_mass_at_most_quarter_to_20(self):
        masses = OscillatingMartingaleMeasure().dead_mass_by_depth(20)
        assert all(mass <= F(1, 4) for mass in masses)
        assert masses[3] == F(1, 8)  # 000 alone among the 8 length-3 nodes

    def test_dead_mass_matches_enumeration(self):
        m = OscillatingMartingaleMeasure()
        masses = m.dead_mass_by_depth(9)
        for n in (4, 7, 9):
            brute = sum(
                F(1, 2**n)
                for bits in itertools.product((0, 1), repeat=n)
                if m.is_dead(bits)
            )
            assert masses[n] == brute


class TestSampling:
    def test_deterministic_path(self):
        model = DeterministicModel((), (1,))
        assert sample_sequence(model, 4, seed=0) == (1, 1, 1, 1)

    def test_point_mass(self):
        assert sample_sequence(IidModel((F(1), F(0))), 3, seed=5) == (0, 0, 0)

    def test_reproducible(self):
        model = IidModel((F(1, 3), F(2, 3)))
        a = sample_sequence(model, 200, seed=9)
        b = sample_sequence(model, 200, seed=9)
        assert a == b
        assert a != sample_sequence(model, 200, seed=10)

    def test_rejects_semimeasure(self):
        leaky = LeakySemimeasure(IidModel((F(1, 2), F(1, 2))), F(1, 8))
        with pytest.raises(SamplingError):
            sample_sequence(leaky, 3, seed=0)

    def test_fair_coin_frequency_30_seeds(self):
        # Binomial concentration: 6+ sigma event per seed at n = 1e5.
        model = IidModel((F(1, 2), F(1, 2)))
        n = 100_000
        for seed in range(30):
            path = sample_path(model, n, derived_rng(seed, 0))
            freq = sum(path) / n
            assert abs(freq - 0.5) < 0.01, (seed, freq)


class TestNamedConstructions:
    def test_example3_tie(self):
        lam, nu, w_lam, w_nu = example3_pair()
        assert w_lam * lam.evaluate("1") == w_nu * nu.evaluate("1") == F(1, 3)
        assert nu.evaluate("01") == 0
        assert lam.evaluate("11") == F(1, 4)

    def test_example4_closed_forms(self):
        mu, nu = make_example4_pair()
        assert mu.step_distribution(1)[1] == F(3, 4)
        assert nu.step_distribution(2)[1] == F(7, 8)
        assert nu.step_distribution(1)[1] == F(1, 2)
        assert mu.step_prob_infimum is None and nu.step_prob_infimum is None

    def test_example4_ratio_oscillates(self):
        mu, nu = make_example4_pair()
        ratio, r = [], F(1)
        for i in range(1, 41):
            r *= nu.step_distribution(i)[1] / mu.step_distribution(i)[1]
            ratio.append(r)
        increments = [b - a for a, b in zip(ratio, ratio[1:])]
        signs = [1 if d > 0 else -1 for d in increments if d != 0]
        changes = sum(1 for s, t in zip(signs, signs[1:]) if s != t)
        assert changes >= 5

    def test_example5_weights(self):
        lam, nu, w_lam, w_nu = example5_pair()
        assert (w_lam, w_nu) == (F(3, 7), F(4, 7))
        assert nu.evaluate(()) == 1

    def test_alphabet_helpers(self):
        alpha = Alphabet(3)
        assert alpha.word("201") == (2, 0, 1)
        assert alpha.format((2, 0, 1)) == "201"
        with pytest.raises(ValueError):
            Alphabet(1)
