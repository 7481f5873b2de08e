import pytest

from newtondiag import whitney
from newtondiag.diagram import NewtonDiagram, check_sink_source_structure
from newtondiag.errors import NotInHError
from newtondiag.polynomial import Polynomial, is_in_H, parse, term_count

EQ24 = parse("x^3 + 3*x^2*z + 3*x*z^2 + z^3 + 3*x*y + 3*y*z + y^3", 3)
F = parse("x^3 + 3*x*y + y^3", 2)


def test_step_examples():
    s3 = Polynomial.hyperplane_sum(3)
    p1 = whitney.whitney_step(s3, (0, 0, 1))
    assert p1 == parse("x + y + x*z + y*z + z^2", 3)
    p2 = whitney.whitney_step(p1, (1, 0, 1))
    assert p2 == parse("x + y + x^2*z + x*y*z + x*z^2 + y*z + z^2", 3)
    assert term_count(p2) == 7
    p = whitney.whitney_step(Polynomial.hyperplane_sum(2), (0, 1))
    assert p == parse("x + x*y + y^2", 2) and term_count(p) == 3


def test_step_rejects_non_top_terms():
    p = parse("x + y + x*z + y*z + z^2", 3)
    with pytest.raises(ValueError):
        whitney.whitney_step(p, (1, 0, 0))
    with pytest.raises(NotInHError):
        whitney.whitney_step(parse("x^2", 2), (2, 0))


def test_replaying_explicit_moves():
    trace = whitney.generate(3, 3, whitney.sequence_chooser([(0, 0, 1), (1, 0, 1)]))
    assert trace.polynomial == parse("x + y + x^2*z + x*y*z + x*z^2 + y*z + z^2", 3)
    assert trace.moves == ((0, 0, 1), (1, 0, 1))


def test_lex_default_is_deterministic():
    trace = whitney.generate(3, 3)
    assert trace.moves == ((1, 0, 0), (2, 0, 0))
    assert trace.polynomial == parse("y + z + x*y + x*z + x^3 + x^2*y + x^2*z", 3)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("d", range(1, 7))
def test_generated_grid(n, d):
    for chooser in ["lex"] + [f"seed:{k}" for k in range(5)]:
        p = whitney.generate(n, d, chooser).polynomial
        assert p.degree == d and term_count(p) == d * (n - 1) + 1
        assert is_in_H(p) and whitney.is_sharp_whitney(p)
        D = NewtonDiagram.from_polynomial(p)
        assert check_sink_source_structure(D) and D.node_count() == (n - 1) * d + 2


def test_step_invariants_along_random_traces():
    for seed in range(10):
        choose = whitney.seeded_chooser(seed)
        p = Polynomial.hyperplane_sum(4)
        for _ in range(4):
            alpha = choose(p, whitney.max_degree_terms(p))
            nxt = whitney.whitney_step(p, alpha)
            assert nxt.degree == p.degree + 1 and len(nxt) == len(p) + 3
            p = nxt


def test_classifier():
    assert not whitney.is_sharp_whitney(EQ24)
    assert whitney.is_sharp_whitney(Polynomial.hyperplane_sum(3))
    assert not whitney.is_sharp_whitney(parse("x^2", 2))


def test_degree_bound_reports():
    assert whitney.check_degree_bound(F).to_dict() == {"n": 2, "d": 3, "N": 3, "bound": 3, "tight": True}
    assert whitney.check_degree_bound(EQ24).to_dict() == {"n": 3, "d": 3, "N": 7, "bound": 3, "tight": True}
    rep = whitney.check_degree_bound(whitney.generate(4, 3).polynomial)
    assert (rep.d, rep.N, rep.bound, rep.tight) == (3, 10, 3, True)
    rep = whitney.check_degree_bound(parse("x^2 + 2*x*y + y^2", 2))
    assert rep.bound == 3 and not rep.tight


def test_degree_bound_errors():
    with pytest.raises(ValueError):
        whitney.check_degree_bound(parse("x1^2", 1))
    with pytest.raises(NotInHError):
        whitney.check_degree_bound(parse("x^2", 2))
    with pytest.raises(ValueError):
        whitney.check_degree_bound(Polynomial.constant(2, 1))
    with pytest.raises(ValueError):
        whitney.parse_chooser("random")
