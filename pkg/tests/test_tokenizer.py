from hypothesis import given, settings
from hypothesis import strategies as st

from accuscore.tokenizer import join_tokens, normalize, tokenize

SENTENCE = (
    "The Denver Nuggets defeated the Miami Heat on Thursday . "
    "Jamal Murray had a game - high 30 points ."
)


def test_pretokenized_sentence_indices():
    tokens = tokenize(SENTENCE).tokens
    assert len(tokens) == 20
    assert tokens[5] == "Miami"
    assert tokens[8] == "Thursday"
    assert tokens[14:17] == ("game", "-", "high")


def test_empty_input():
    assert tokenize("").tokens == ()
    assert tokenize("   \n\t ").tokens == ()


def test_opening_clause_whitespace_split():
    tokens = tokenize("The Memphis Grizzlies ( 5 - 2 ) defeated the Phoenix Suns").tokens
    assert len(tokens) == 12
    assert tokens[4] == "5"


def test_whitespace_variants_are_equivalent():
    assert tokenize("a\tb\nc   d").tokens == ("a", "b", "c", "d")


def test_hyphen_tokens_pass_through():
    # Pre-tokenized corpora decide hyphen spacing; the tokenizer never merges
    # or splits around hyphens on its own.
    assert tokenize("game - high").tokens == ("game", "-", "high")
    assert tokenize("out-scored").tokens == ("out-scored",)


def test_normalize_splits_trailing_punctuation():
    assert tokenize("Hello, world.", normalize_punctuation=True).tokens == (
        "Hello", ",", "world", ".")


def test_normalize_splits_parenthesized_record():
    assert tokenize("(5-2)", normalize_punctuation=True).tokens == ("(", "5", "-", "2", ")")


def test_normalize_keeps_decimal_points():
    assert tokenize("shot 3.5 threes.", normalize_punctuation=True).tokens == (
        "shot", "3.5", "threes", ".")


def test_normalize_is_exposed_separately():
    assert normalize("a, b") == "a ,  b"
    assert tokenize(normalize("a, b")).tokens == ("a", ",", "b")


def test_join_tokens():
    assert join_tokens(("a", "b", "c")) == "a b c"


TOKEN_TEXT = st.text(
    alphabet=st.characters(blacklist_categories=("Cs",), blacklist_characters=" \t\n\r\f\v"),
    min_size=0, max_size=30)


@settings(max_examples=300, deadline=None, derandomize=True)
@given(TOKEN_TEXT)
def test_retokenizing_canonical_form_is_identity(raw):
    first = tokenize(raw)
    assert tokenize(join_tokens(first.tokens)).tokens == first.tokens


@settings(max_examples=300, deadline=None, derandomize=True)
@given(st.text(max_size=60))
def test_tokens_never_empty_or_spaced(raw):
    for token in tokenize(raw).tokens:
        assert token
        assert not any(c.isspace() for c in token)


@settings(max_examples=300, deadline=None, derandomize=True)
@given(st.text(max_size=60), st.booleans())
def test_tokenization_never_invents_characters(raw, normalize_punctuation):
    tokens = tokenize(raw, normalize_punctuation=normalize_punctuation).tokens
    position = 0
    for token in tokens:
        for char in token:
            position = raw.index(char, position) + 1
