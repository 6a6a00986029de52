from conftest import BS, DELTA_T_MINUS_2, P
from largeness.cosets import todd_coxeter
from largeness.linalg import AbelianInvariants
from largeness.onerelator import height1_largeness_driver
from largeness.parsing import parse_word
from largeness.presentation import Chi, simplify
from largeness.verdict import (
    AlexanderVanishes,
    DeficiencyAtLeastTwo,
    HeightOneBigAbelianization,
    Verdict,
    certificate_from_json,
    certificate_to_json,
)
from largeness.verify import check_certificate

BS24_CERT = AlexanderVanishes((), Chi((0, 1)), 2)


def test_mod_two_certificate():
    assert check_certificate(P(BS[2, 4]), BS24_CERT)
    result = check_certificate(P(BS[2, 3]), BS24_CERT)
    assert not result and "not zero" in result.reason


def test_deficiency_certificate_on_one_relator_group():
    p = P(BS[2, 3])
    q, moves = simplify(p)
    assert not check_certificate(p, DeficiencyAtLeastTwo(tuple(moves), q))
    free = P("< a, b, c | c a^-1 >")
    q, moves = simplify(free)
    assert check_certificate(free, DeficiencyAtLeastTwo(tuple(moves), q))
    # a forged target presentation fails even when its deficiency is large
    assert not check_certificate(free, DeficiencyAtLeastTwo(tuple(moves), P("< a, b >")))


def test_chi_must_be_a_surjective_homomorphism():
    p = P(BS[2, 4])
    assert not check_certificate(p, AlexanderVanishes((), Chi((1, 0)), 2))
    assert not check_certificate(p, AlexanderVanishes((), Chi((0, 2)), 2))


def test_height_one_certificate_round_trip():
    p = P(DELTA_T_MINUS_2)
    v = height1_largeness_driver(p)
    cert = v.certificate
    assert isinstance(cert, HeightOneBigAbelianization)
    assert check_certificate(p, cert)
    again = certificate_from_json(certificate_to_json(cert), p)
    assert again == cert and check_certificate(p, again)
    forged = HeightOneBigAbelianization(cert.subgroup, AbelianInvariants(3, ()))
    assert not check_certificate(p, forged)


def test_tampered_table_is_rejected():
    p = P(BS[1, 2])
    table = todd_coxeter(p, [parse_word("a", p.names), parse_word("t^2", p.names)])
    bad = type(table)(table.action[::-1], p, table.subgroup_gens)
    assert not check_certificate(p, AlexanderVanishes((bad,), Chi((0, 1, 0)), None))


def test_verdict_requires_certificate_iff_large():
    import pytest

    with pytest.raises(ValueError):
        Verdict("LargeCertified")
    with pytest.raises(ValueError):
        Verdict("Unknown", BS24_CERT)
