import pytest

from clusterdimer.weyl import (
    Generator,
    Word,
    apply_relation,
    cyclically_equal,
    parse_word,
    tau_order,
    tau_word,
)


def test_parse_triangle_word():
    w = parse_word("0 1 0 L", rank=2)
    assert [g.text() for g in w.letters] == ["0", "1", "0"]
    assert w.lambda_power == 1
    assert w.text() == "0 1 0 L"


def test_parse_toda_word():
    w = parse_word("1 -1 0 -0", rank=2)
    assert [(g.index, g.barred) for g in w.letters] == [(1, False), (1, True), (0, False), (0, True)]
    assert w.lambda_power == 0


def test_parse_empty():
    w = parse_word("", rank=3)
    assert len(w) == 0 and w.lambda_power == 0


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_word("3", rank=3)
    with pytest.raises(ValueError):
        parse_word("x", rank=3)
    with pytest.raises(ValueError):
        parse_word("L 1", rank=3)


def test_braid():
    w = parse_word("1 2 1", rank=4)
    out = apply_relation(w, 0, "braid")
    assert out.text() == "2 1 2"
    with pytest.raises(ValueError):
        apply_relation(parse_word("1 3 1", rank=4), 0, "braid")


def test_commute():
    w = parse_word("1 -2", rank=4)
    assert apply_relation(w, 0, "commute").text() == "-2 1"
    with pytest.raises(ValueError):
        apply_relation(parse_word("1 2", rank=4), 0, "commute")
    # rank 2: 0 and 1 are doubly linked, same-class neighbors never commute
    with pytest.raises(ValueError):
        apply_relation(parse_word("0 1", rank=2), 0, "commute")
    # but opposite classes always do
    assert apply_relation(parse_word("0 -1", rank=2), 0, "commute").text() == "-1 0"


def test_lambda_shift():
    # in the loop realization Lambda s_i = s_{i-1} Lambda, so the final s_1
    # crosses Lambda leftwards as s_0
    w = parse_word("1 L", rank=3)
    out = apply_relation(w, 0, "lambda_shift")
    assert out.text() == "0 L"


def test_tau_triangle():
    w = parse_word("0 1 0 L", rank=2)
    t = tau_word(w)
    assert t.text() == "1 0 1 L"  # shift by -1 == +1 mod 2
    assert tau_order(w) == 2
    tt = tau_word(t)
    assert cyclically_equal(tt, w)


def test_tau_identity_when_k_zero():
    w = parse_word("1 0 -1 -0", rank=2)
    t = tau_word(w)
    # k = 0: tau only sorts positives before negatives (an equality in the group)
    assert t.text() == "1 0 -1 -0"
    assert tau_order(w) == 1


def test_tau_empty():
    w = parse_word("", rank=3)
    assert tau_word(w).text() == ""


def test_tau_full_cycle_returns_to_sorted_word():
    from clusterdimer.weyl import sort_positive_negative

    w = parse_word("0 -2 1 -1 2 L^2", rank=3)
    t = tau_word(w)
    assert len(t) == len(w)
    assert sum(g.barred for g in t.letters) == sum(g.barred for g in w.letters)
    assert tau_order(w) == 3
    cur = w
    for _ in range(tau_order(w)):
        cur = tau_word(cur)
    # tau operates on the positives-first representative of the cyclic word
    assert cyclically_equal(cur, sort_positive_negative(w))
