import json
from fractions import Fraction

import pytest

from oracles import sample_mutations
from shibasis.derivation import Derivation, basis, euler, phi
from shibasis.poly import Poly
from shibasis.rootsystem import LinearForm, shi_cone
from shibasis.verifier import (
    DegreeMismatch,
    Mode,
    NotProportional,
    check_membership,
    congruence_check,
    congruence_relations,
    congruence_sweep,
    full_verify,
    saito_check,
)

# determinant = c * Q; computed once by the exact path and frozen as regression fixtures
SAITO_CONSTANTS = {
    ("B", 1): Fraction(1),
    ("C", 1): Fraction(1, 2),
    ("B", 2): Fraction(-1, 3),
    ("C", 2): Fraction(-1, 12),
    ("B", 3): Fraction(-1, 15),
    ("C", 3): Fraction(-1, 120),
}


def test_membership_rank_one():
    rep = check_membership(phi("B", 1, 1), shi_cone("B", 1))
    assert rep.passed and len(rep.checks) == 3
    x, z = Poly.var(2, 0), Poly.var(2, 1)
    by_form = {c.form: c.witness for c in rep.checks}
    assert by_form[LinearForm((0, 1))].is_zero()
    assert by_form[LinearForm((1, 0))] == x - z
    assert by_form[LinearForm((1, -1))] == x


@pytest.mark.parametrize("family", ["B", "C"])
@pytest.mark.parametrize("rank", [1, 2, 3])
def test_euler_is_always_a_member(family, rank):
    assert check_membership(euler(rank), shi_cone(family, rank)).passed


def test_tampered_derivation_fails_at_translated_form():
    x = Poly.var(2, 0)
    bad = Derivation(Poly.zero(2), (x * x,), "x^2 d/dx")
    rep = check_membership(bad, shi_cone("B", 1))
    assert not rep.passed
    [fail] = rep.failures
    assert fail.form == LinearForm((1, -1))
    assert fail.witness == Poly.var(2, 1) ** 2  # x^2 reduced modulo x - z


def test_congruence_examples():
    assert congruence_relations("B", 2, 0, 1, 2, 1) == (True, True)
    assert congruence_relations("B", 1, 0, 1, 2, 0) == (True, True)
    assert congruence_relations("C", 2, 0, 1, 2, 1) == (True, True)


def test_congruence_errors():
    with pytest.raises(ValueError):
        congruence_check("B", 1, 0, 1, 2, 2)
    with pytest.raises(ValueError):
        congruence_check("B", 1, 0, 1, 1, 1)


@pytest.mark.parametrize("family", ["B", "C"])
def test_congruence_sweep_small(family):
    results = congruence_sweep(family, 3)
    assert results and all(r.ok for r in results)


def test_saito_rank_one():
    cert = saito_check(basis("B", 1), shi_cone("B", 1))
    x, z = Poly.var(2, 0), Poly.var(2, 1)
    assert cert.determinant == z * x * (x - z) and cert.constant_c == 1
    cert = saito_check(basis("C", 1), shi_cone("C", 1))
    assert cert.determinant == z * x * (2 * x - z) and cert.constant_c == Fraction(1, 2)


def test_saito_duplicate_rows():
    a = shi_cone("B", 1)
    with pytest.raises(DegreeMismatch):
        saito_check([euler(1), euler(1)], a)
    with pytest.raises(NotProportional):
        saito_check([euler(1), euler(1)], a, check_degrees=False)
    b = basis("B", 2)
    with pytest.raises(NotProportional):
        saito_check([b[0], b[1], b[1]], shi_cone("B", 2))
    with pytest.raises(NotProportional):
        saito_check([b[0], b[1], b[1]], shi_cone("B", 2), mode="probabilistic")


def test_saito_rejects_wrong_arrangement():
    # type-B basis against the type-C cone: membership fails, so det is not c*Q
    with pytest.raises(NotProportional):
        saito_check(basis("B", 2), shi_cone("C", 2))


@pytest.mark.parametrize("family, rank", sorted(SAITO_CONSTANTS))
def test_full_verify_regression(family, rank):
    cert = full_verify(family, rank)
    assert cert.status == "PASS"
    assert cert.saito.constant_c == SAITO_CONSTANTS[(family, rank)]
    assert cert.saito.degree_det == cert.saito.degree_q == 2 * rank * rank + 1
    prob = full_verify(family, rank, Mode.PROBABILISTIC, seed=7, trials=4)
    assert prob.status == "PASS" and prob.saito.constant_c == cert.saito.constant_c


def test_certificate_json_schema():
    doc = full_verify("C", 1).to_json()
    assert set(doc) == {"family", "rank", "membership", "saito", "restriction_identity", "status"}
    assert doc["saito"] == {"mode": "exact", "c": "1/2", "degree_det": 3, "degree_q": 3}
    assert doc["status"] == "PASS" and doc["restriction_identity"] is True
    assert json.loads(json.dumps(doc)) == doc


@pytest.mark.parametrize("family", ["B", "C"])
def test_mutations_are_caught(family):
    for desc, mutated in sample_mutations(basis(family, 2), 10, seed=1):
        cert = full_verify(family, 2, basis=mutated)
        assert cert.status == "FAIL", desc
        assert not all(m.passed for m in cert.membership), desc
