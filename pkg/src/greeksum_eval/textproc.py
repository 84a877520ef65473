"""Unicode text processing for Greek (and general Unicode) news text.

Normalization, word tokenization, sentence splitting and n-gram counting.
All scoring and baseline modules consume these primitives; everything here is
a pure function with no state beyond explicit arguments.
"""

from __future__ import annotations

import re
import unicodedata
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass

__all__ = [
    "DEFAULT_ABBREVIATIONS",
    "NormalizedText",
    "Sentence",
    "ngrams",
    "normalize",
    "split_sentences",
    "word_tokenize",
]


@dataclass(frozen=True)
class NormalizedText:
    """A string paired with its NFC-normalized, case-folded form."""

    original: str
    normalized: str


@dataclass(frozen=True)
class Sentence:
    """A sentence with its half-open character span into the source string."""

    text: str
    start: int
    end: int


def _fold(text: str) -> str:
    return unicodedata.normalize("NFC", text.casefold())


def normalize(text: str) -> NormalizedText:
    """NFC-normalize and fully case-fold ``text``; diacritics are kept.

    Full case folding maps both sigma forms to the same codepoint, so
    word-final 'ς' and medial 'σ' compare equal after normalization.
    """
    folded = _fold(unicodedata.normalize("NFC", text))
    # Case folding can expose new composition opportunities; repeat until
    # stable so that normalize() is idempotent for every input.
    refolded = _fold(folded)
    while refolded != folded:
        folded, refolded = refolded, _fold(refolded)
    return NormalizedText(original=text, normalized=folded)


# Maximal runs of alphanumeric characters; '_' is a \w character but neither
# a letter nor a digit, so it is excluded. Hyphens and apostrophes split.
_WORD_RE = re.compile(r"[^\W_]+")


def word_tokenize(text: NormalizedText | str) -> list[str]:
    """Extract word tokens: maximal runs of Unicode letters or digits.

    Punctuation and symbols are discarded. Pass the output of
    :func:`normalize` to obtain the token units used by the metrics.
    """
    if isinstance(text, NormalizedText):
        text = text.normalized
    return _WORD_RE.findall(text)


def ngrams(tokens: Sequence[str], n: int) -> Counter[tuple[str, ...]]:
    """Count all contiguous ``n``-token windows of ``tokens``.

    Empty when the sequence is shorter than ``n``; the counts always sum to
    ``max(0, len(tokens) - n + 1)``.
    """
    if n < 1:
        raise ValueError(f"n-gram order must be >= 1, got {n}")
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


DEFAULT_ABBREVIATIONS: tuple[str, ...] = ("κ.", "π.χ.", "δισ.", "εκατ.", "Α.Ε.")

_TERMINATORS = frozenset({".", "!", "…", ";", ";"})
_CLOSERS = frozenset({"»", '"', "”", "’", "'", ")", "]", "}"})
_OPENERS = frozenset({"«", '"', "“"})


def split_sentences(
    text: str,
    abbreviations: Sequence[str] = DEFAULT_ABBREVIATIONS,
) -> list[Sentence]:
    """Split raw (un-normalized) text into sentences with character spans.

    A sentence ends at '.', '!', '…' or ';' (the Greek question mark) when
    the terminator — with any closing quotes or brackets attached — is
    followed by end of text, or by whitespace and then an uppercase letter or
    an opening quote. A period that completes one of ``abbreviations`` never
    ends a sentence. Spans are strictly increasing, never overlap, and cover
    every non-whitespace character of the source.
    """
    sentences: list[Sentence] = []
    n = len(text)
    start: int | None = None
    i = 0
    while i < n:
        ch = text[i]
        if start is None:
            if ch.isspace():
                i += 1
                continue
            start = i
        if ch in _TERMINATORS:
            if ch == "." and _ends_abbreviation(text, i, abbreviations):
                i += 1
                continue
            j = i + 1
            while j < n and text[j] in _CLOSERS:
                j += 1
            if _boundary_follows(text, j):
                sentences.append(Sentence(text=text[start:j], start=start, end=j))
                start = None
                i = j
                continue
        i += 1
    if start is not None:
        end = n
        while end > start and text[end - 1].isspace():
            end -= 1
        sentences.append(Sentence(text=text[start:end], start=start, end=end))
    return sentences


def _ends_abbreviation(
    text: str, dot_index: int, abbreviations: Sequence[str]
) -> bool:
    for abbr in abbreviations:
        lo = dot_index + 1 - len(abbr)
        if lo < 0 or text[lo : dot_index + 1] != abbr:
            continue
        if lo == 0 or not text[lo - 1].isalnum():
            return True
    return False


def _boundary_follows(text: str, j: int) -> bool:
    """True when position ``j`` (just past terminator and closers) ends a sentence."""
    n = len(text)
    if j >= n:
        return True
    if not text[j].isspace():
        return False
    k = j
    while k < n and text[k].isspace():
        k += 1
    if k >= n:
        return True
    ch = text[k]
    return ch.isupper() or ch.istitle() or ch in _OPENERS
