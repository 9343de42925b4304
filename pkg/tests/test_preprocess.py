import re
import unicodedata

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vibesift.preprocess import (
    DEFAULT_EMOJI_RANGES,
    EmptyClass,
    Profile,
    is_punct_token,
    normalize,
    parse_ranges,
    remove_stopwords,
    stopword_profile,
    strip_emoji,
    tweet_tokenize,
)


def in_strip_ranges(ch):
    return any(lo <= ord(ch) <= hi for lo, hi in DEFAULT_EMOJI_RANGES)


def test_tokenize_plain_sentence():
    assert tweet_tokenize("I like polar bears") == ["I", "like", "polar", "bears"]


def test_tokenize_empty():
    assert tweet_tokenize("") == []
    assert tweet_tokenize("   \n\t") == []


def test_tokenize_punct_emoticon_hashtag():
    text = "great!!! :) #vaccine"
    # Character-class oracle valid for this input only.
    oracle = re.findall(r"#\w+|:\)|\w+|[^\w\s]+", text)
    assert tweet_tokenize(text) == oracle == ["great", "!!!", ":)", "#vaccine"]


@pytest.mark.parametrize(
    "text, expected",
    [
        ("check https://example.org/a?b=1.", ["check", "https://example.org/a?b=1", "."]),
        ("see www.cdc.gov", ["see", "www.cdc.gov"]),
        ("@healthdept don't wait,", ["@healthdept", "don't", "wait", ","]),
        ('"quoted"', ['"', "quoted", '"']),
        ("so sad :-(", ["so", "sad", ":-("]),
        ("(#Pfizer)", ["(", "#Pfizer", ")"]),
        ("covid-19 u.s.", ["covid-19", "u.s", "."]),
    ],
)
def test_tokenize_keeps_special_tokens(text, expected):
    assert tweet_tokenize(text) == expected


def test_strip_emoji_syringe():
    text = "good shot \U0001F489"
    assert 0x1F300 <= 0x1F489 <= 0x1F5FF
    expected = "".join(ch for ch in text if not in_strip_ranges(ch))
    assert strip_emoji(text) == expected == "good shot "


def test_strip_emoji_identity_and_only_emoji():
    assert strip_emoji("plain text") == "plain text"
    assert strip_emoji("\U0001F600\U0001F489❤️").strip() == ""


def test_strip_emoji_zwj_sequences():
    family = "\U0001F468‍\U0001F469‍\U0001F467"
    assert strip_emoji(f"a {family} b") == "a  b"
    # A joiner not next to a removed codepoint survives.
    assert strip_emoji("क्‍ष") == "क्‍ष"


def test_parse_ranges():
    assert parse_ranges("1F300-1F5FF, U+FE0F") == ((0x1F300, 0x1F5FF), (0xFE0F, 0xFE0F))
    with pytest.raises(ValueError):
        parse_ranges("2000-1000")


def test_strip_emoji_custom_ranges():
    assert strip_emoji("abc", ranges=parse_ranges("61")) == "bc"


def test_normalize_full():
    assert normalize("Get VACCINATED!!! #NowPlease", Profile.FULL).tokens == ("get", "vaccinated", "nowplease")
    assert normalize("", Profile.FULL).tokens == ()


def test_normalize_minimal():
    clean = normalize("I like polar bears", Profile.MINIMAL, tweet_id="t1")
    assert clean.tokens == ("I", "like", "polar", "bears")
    assert clean.normalized_text == "I like polar bears"
    assert clean.id == "t1"


def test_normalize_drops_urls_and_mentions():
    text = "@cdc Booked!! https://t.co/x #Dose"
    assert normalize(text, Profile.MINIMAL).tokens == ("Booked", "!!", "#Dose")
    assert normalize(text, Profile.FULL).tokens == ("booked", "dose")


def test_remove_stopwords():
    assert remove_stopwords(["this", "place", "is", "the", "worst"], {"this", "is", "the"}) == ["place", "worst"]
    assert remove_stopwords([], {"the"}) == []
    assert remove_stopwords(["vaccine", "works"], {"the"}) == ["vaccine", "works"]


@given(st.lists(st.text(max_size=8)))
def test_remove_stopwords_empty_stoplist_is_identity(tokens):
    assert remove_stopwords(tokens, set()) == tokens


tweet_text = st.text(
    alphabet=st.one_of(
        st.characters(),
        st.sampled_from(list("#@!?.,:;)(' ") + ["\U0001F600", "‍", "️", "❤"]),
    ),
    max_size=60,
)


@given(tweet_text)
def test_strip_emoji_idempotent(text):
    once = strip_emoji(text)
    assert strip_emoji(once) == once
    assert not any(in_strip_ranges(ch) for ch in once)


@given(tweet_text)
def test_tokenize_no_empty_tokens_and_covers_input(text):
    tokens = tweet_tokenize(text)
    assert all(tokens)
    assert "".join(tokens) == "".join(text.split())


@given(tweet_text)
@settings(max_examples=300)
def test_full_profile_is_clean(text):
    for tok in normalize(text, Profile.FULL).tokens:
        assert not any(ch.isupper() for ch in tok)
        assert not is_punct_token(tok)
        assert not any(in_strip_ranges(ch) for ch in tok)
        assert tok[0] not in "#@"
        assert not tok.startswith(("http://", "https://", "www."))


def test_stopword_profile_uniform_word_has_no_divergence():
    labelled = [("the cat sat", "neg"), ("the dog ran", "neu"), ("the fox hid", "pos")]
    prof = stopword_profile(labelled, {"the"})
    assert prof.divergence["the"] == pytest.approx(0.0)


def test_stopword_profile_planted_word_diverges():
    labelled = (
        [("not the same again", "neg")] * 10
        + [("the same again today", "neu")] * 10
        + [("the same again today", "pos")] * 10
    )
    prof = stopword_profile(labelled, {"not", "the", "again"})
    assert prof.divergence["not"] > prof.divergence["the"]
    assert prof.divergence["not"] > prof.divergence["again"]
    assert prof.ranked()[0][0] == "not"


def test_stopword_profile_frequencies_sum_to_one():
    labelled = [("the cat and the dog", "a"), ("a bird in the tree", "b"), ("no words here at all", "a")]
    prof = stopword_profile(labelled, {"the", "and", "a", "in", "no", "at", "all", "here"})
    for freqs in prof.frequencies.values():
        assert sum(freqs.values()) == pytest.approx(1.0, abs=1e-9)


def test_stopword_profile_empty_class():
    with pytest.raises(EmptyClass):
        stopword_profile([("the", "neg")], {"the"}, classes=["neg", "pos"])


def test_default_stoplist_size():
    from vibesift.preprocess import default_stoplist

    assert len(default_stoplist()) == 127


def test_punct_token_categories():
    assert is_punct_token("!!!")
    assert is_punct_token("...")
    assert not is_punct_token(":D")
    assert all(unicodedata.category(c)[0] == "P" for c in "!?.")
