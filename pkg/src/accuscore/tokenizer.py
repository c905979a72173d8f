"""Whitespace tokenization, with an optional punctuation-splitting pre-pass.

The corpora this toolkit targets ship pre-tokenized (punctuation already
separated by spaces), so the primary mode is a plain whitespace split and
re-tokenizing pre-tokenized text is the identity. The normalization pre-pass
exists for raw, untokenized input and is off by default; it is a best-effort
approximation, not a normative scheme.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

# Punctuation split into standalone tokens by the pre-pass.
_STANDALONE = re.compile(r'([(),;:!?"\[\]])')
# A hyphen splits when both neighbours are alphanumeric ("game-high", "102-91").
_HYPHEN = re.compile(r"(?<=[0-9A-Za-z])-(?=[0-9A-Za-z])")
# A period splits unless it has a digit on either side (decimals stay whole).
_PERIOD = re.compile(r"(?<!\d)\.(?!\d)")


@dataclass(frozen=True)
class TokenizedText:
    """A token sequence plus the raw string it came from."""

    tokens: tuple[str, ...]
    source: str

    def __len__(self) -> int:
        return len(self.tokens)


def normalize(raw: str) -> str:
    """Space out punctuation so raw prose matches the pre-tokenized corpus style."""
    text = _STANDALONE.sub(r" \1 ", raw)
    text = _HYPHEN.sub(" - ", text)
    text = _PERIOD.sub(" . ", text)
    return text


def tokenize(raw: str, *, normalize_punctuation: bool = False) -> TokenizedText:
    """Split text into the tokens that all span indices refer to.

    Indices into the result are 0-based. With ``normalize_punctuation`` the
    pre-pass above runs first; otherwise the split is pure whitespace, which
    is the identity on pre-tokenized corpus text.
    """
    text = normalize(raw) if normalize_punctuation else raw
    return TokenizedText(tokens=tuple(text.split()), source=raw)


def join_tokens(tokens: tuple[str, ...] | list[str]) -> str:
    return " ".join(tokens)
