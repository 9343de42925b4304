import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vibesift.valence import (
    DEFAULT_RULES,
    ParseError,
    ValenceLexicon,
    ValenceOutOfRange,
    ValenceRules,
    load_rules,
    load_valence_lexicon,
    normalize_compound,
    score,
)


def bisect(f, lo, hi, tol=1e-12):
    flo = f(lo)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if (f(mid) > 0) == (flo > 0):
            lo, flo = mid, f(mid)
        else:
            hi = mid
    return (lo + hi) / 2


def test_like_valence_recovered_from_printed_compound():
    root = bisect(lambda x: x / math.sqrt(x * x + 15) - 0.3612, 0.0, 4.0)
    assert root == pytest.approx(1.5, abs=1e-3)


def test_lexicon_parses(tmp_path):
    path = tmp_path / "lex.tsv"
    path.write_text("# comment\nlike\t1.5\nLOVE\t3.2\n", encoding="utf-8")
    lex = load_valence_lexicon(path)
    assert lex.valences == {"like": 1.5, "love": 3.2}
    assert lex.valence("Like") == 1.5
    assert "not" in lex.negators
    assert lex.boosters["very"] > 0


def test_lexicon_empty_file_scores_neutral(tmp_path):
    path = tmp_path / "lex.tsv"
    path.write_text("", encoding="utf-8")
    lex = load_valence_lexicon(path)
    assert lex.valences == {}
    assert score("I love this", lex).compound == 0.0


def test_lexicon_out_of_range(tmp_path):
    path = tmp_path / "lex.tsv"
    path.write_text("worst\t9.0\n", encoding="utf-8")
    with pytest.raises(ValenceOutOfRange):
        load_valence_lexicon(path)


def test_lexicon_parse_error(tmp_path):
    path = tmp_path / "lex.tsv"
    path.write_text("good 1.0\n", encoding="utf-8")
    with pytest.raises(ParseError) as info:
        load_valence_lexicon(path)
    assert info.value.line == 1


def test_lexicon_duplicate_last_wins(tmp_path, caplog):
    path = tmp_path / "lex.tsv"
    path.write_text("good\t1.0\ngood\t2.0\n", encoding="utf-8")
    assert load_valence_lexicon(path).valences["good"] == 2.0
    assert "duplicate" in caplog.text


def test_polar_bears_golden(vlex):
    s = score("I like polar bears", vlex)
    assert s.compound == pytest.approx(0.3612, abs=5e-5)
    assert s.neg == 0.0
    assert s.neu == pytest.approx(2 / 4.5)
    assert s.pos == pytest.approx(2.5 / 4.5)
    assert s.display() == {"compound": 0.3612, "neg": 0.0, "neu": 0.444, "pos": 0.556}


def test_no_valenced_token(vlex):
    s = score("polar bears", vlex)
    assert s.compound == 0.0
    assert s.neu == 1.0


def test_exclamation_emphasis(vlex):
    expected = 1.792 / math.sqrt(1.792**2 + 15)
    assert expected == pytest.approx(0.4199, abs=5e-5)
    assert score("I like polar bears!", vlex).compound == pytest.approx(expected)


def test_exclamation_cap(vlex):
    assert score("I like it!!!!", vlex).compound == score("I like it!!!!!!!", vlex).compound


def test_question_marks():
    lex = ValenceLexicon({"good": 2.0})
    one_q = score("good stuff?", lex).compound
    assert one_q == pytest.approx(normalize_compound(2.0))
    assert score("good stuff???", lex).compound == pytest.approx(normalize_compound(2.0 + 2 * 0.18))
    assert score("good stuff?????????", lex).compound == pytest.approx(normalize_compound(2.0 + 3 * 0.18))


def test_caps_emphasis():
    lex = ValenceLexicon({"good": 2.0})
    assert score("GOOD stuff", lex).compound == pytest.approx(normalize_compound(2.733))
    # All caps throughout: no emphasis.
    assert score("GOOD STUFF", lex).compound == pytest.approx(normalize_compound(2.0))


def test_booster_decay():
    lex = ValenceLexicon({"good": 2.0}, boosters={"very": 0.3})
    assert score("very good", lex).compound == pytest.approx(normalize_compound(2.3))
    assert score("very xx good", lex).compound == pytest.approx(normalize_compound(2.0 + 0.3 * 0.95))
    assert score("very xx yy good", lex).compound == pytest.approx(normalize_compound(2.0 + 0.3 * 0.9))
    assert score("very xx yy zz good", lex).compound == pytest.approx(normalize_compound(2.0))


def test_booster_sign_aligned():
    lex = ValenceLexicon({"bad": -2.0}, boosters={"very": 0.3})
    assert score("very bad", lex).compound == pytest.approx(normalize_compound(-2.3))


def test_negation_window():
    lex = ValenceLexicon({"good": 2.0}, negators=frozenset({"not"}))
    assert score("not good", lex).compound == pytest.approx(normalize_compound(-1.48))
    assert score("not aa bb good", lex).compound == pytest.approx(normalize_compound(-1.48))
    assert score("not aa bb cc good", lex).compound == pytest.approx(normalize_compound(2.0))


def test_but_clause():
    lex = ValenceLexicon({"good": 2.0, "bad": -2.0})
    assert score("good but bad", lex).compound == pytest.approx(normalize_compound(2.0 * 0.5 - 2.0 * 1.5))


def test_empty_rule(vlex):
    assert score("", vlex) == score("a ! ?", vlex)
    s = score("", vlex)
    assert (s.neg, s.neu, s.pos, s.compound) == (0.0, 0.0, 0.0, 0.0)


def test_normalize_compound_values():
    assert normalize_compound(1.5) == pytest.approx(0.3612, abs=5e-5)
    assert normalize_compound(0.0) == 0.0
    assert abs(normalize_compound(100)) > 0.99
    assert abs(normalize_compound(-100)) > 0.99
    assert normalize_compound(float("inf")) == 1.0
    with pytest.raises(ValueError):
        normalize_compound(1.0, alpha=0)


@given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
def test_normalize_compound_odd_and_monotone(a, b):
    assert normalize_compound(-a) == -normalize_compound(a)
    if a < b and b - a > 1e-9 * max(1.0, abs(a), abs(b)):
        assert normalize_compound(a) <= normalize_compound(b)


def test_rules_override(tmp_path):
    path = tmp_path / "rules.txt"
    path.write_text("alpha = 10  # tighter\nwindow = 2\n", encoding="utf-8")
    rules = load_rules(path)
    assert rules.alpha == 10.0 and rules.window == 2
    assert rules.caps_emphasis == DEFAULT_RULES.caps_emphasis
    lex = ValenceLexicon({"like": 1.5})
    assert score("I like polar bears", lex, rules).compound == pytest.approx(1.5 / math.sqrt(12.25))
    path.write_text("nonsense = 1\n", encoding="utf-8")
    with pytest.raises(ParseError):
        load_rules(path)


def test_rules_dataclass_defaults():
    assert ValenceRules().booster_decay == (1.0, 0.95, 0.9)


words = st.sampled_from(
    ["like", "LOVE", "bad", "worst", "not", "very", "but", "polar", "bears", "I", "!", "?", "Hate", "slightly", "no"]
)


@given(st.lists(words, max_size=15))
def test_score_bounds_property(tokens):
    from vibesift.valence import default_valence_lexicon

    s = score(" ".join(tokens), default_valence_lexicon())
    assert -1.0 <= s.compound <= 1.0
    total = s.neg + s.neu + s.pos
    assert total == pytest.approx(1.0, abs=1e-6) or total == 0.0


def test_single_token_monotone(vlex):
    ordered = sorted(vlex.valences.items(), key=lambda kv: kv[1])
    for (w1, v1), (w2, v2) in zip(ordered, ordered[1:]):
        if v1 < v2:
            assert score(w1, vlex).compound < score(w2, vlex).compound


def test_deterministic(vlex):
    text = "NOT the worst but really GOOD!!"
    assert score(text, vlex) == score(text, vlex)
