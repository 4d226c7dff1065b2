"""Marked length spectra over shortlex balls, with TSV export.

The spectrum pairs every freely reduced word up to a length bound with
its translation length.  Word evaluation runs on integer-scaled matrices
(one 2x2 integer product per word, denominators tracked separately), so
the enumeration stays exact without per-step rational normalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .classify import Representation
from .errors import ShapeMismatchError
from .field import _val_int
from .traces import FundamentalTraceVector, variable_name
from .words import (
    DEFAULT_WORD_CAP,
    Word,
    ball_size,
    letter_alphabet,
    word_sort_key,
    word_to_text,
)
from .errors import CapExceededError


def length_of(rep: Representation, w: Word) -> int:
    """Translation length of the image of w: -2 min(0, v(trace))."""
    return -2 * rep.trace(w).loc_min()


@dataclass(frozen=True)
class LengthSpectrum:
    """Shortlex-ordered (word, translation length) table plus the
    fundamental trace vector as a conjugation-invariant fingerprint."""

    presentation: object
    prime: int
    max_len: int
    entries: Tuple[Tuple[Word, int], ...]
    fingerprint: FundamentalTraceVector


def _scaled_letter_matrices(rep: Representation) -> Dict[int, Tuple[Tuple[int, int, int, int], int]]:
    """Each signed letter as (integer matrix, denominator)."""
    out: Dict[int, Tuple[Tuple[int, int, int, int], int]] = {}
    for i, m in enumerate(rep.matrices, start=1):
        den = math.lcm(
            m.a.denominator, m.b.denominator, m.c.denominator, m.d.denominator
        )
        a, b, c, d = (int(x * den) for x in (m.a, m.b, m.c, m.d))
        out[i] = ((a, b, c, d), den)
        out[-i] = ((d, -b, -c, a), den)  # adjugate: exact inverse up to 1/den
    return out


def spectrum(
    rep: Representation,
    max_len: int,
    max_words: int = DEFAULT_WORD_CAP,
) -> LengthSpectrum:
    """Lengths of every reduced word with |w| <= max_len, shortlex order.

    Each word costs one integer 2x2 product on top of its prefix; the
    length needs only the valuation of the unreduced trace, so no
    fraction normalization happens in the loop.
    """
    presentation = rep.presentation
    predicted = ball_size(presentation.rank, max_len)
    if predicted > max_words:
        raise CapExceededError(
            f"spectrum would hold {predicted} words, cap is {max_words}"
        )
    p = rep.context.p
    letters = letter_alphabet(presentation.rank)
    gens = _scaled_letter_matrices(rep)
    results: List[Tuple[Tuple[int, ...], int]] = [((), 0)]
    stack: List[Tuple[Tuple[int, ...], Tuple[int, int, int, int], int]] = [
        ((), (1, 0, 0, 1), 1)
    ]
    while stack:
        prefix, (a, b, c, d), den = stack.pop()
        last = prefix[-1] if prefix else 0
        for lt in letters:
            if lt == -last:
                continue
            (e, f, g, h), dl = gens[lt]
            na, nb = a * e + b * g, a * f + b * h
            nc, nd = c * e + d * g, c * f + d * h
            nden = den * dl
            grown = prefix + (lt,)
            tr = na + nd
            if tr == 0:
                ell = 0
            else:
                v = _val_int(tr, p) - _val_int(nden, p)
                ell = 0 if v >= 0 else -2 * v
            results.append((grown, ell))
            if len(grown) < max_len:
                stack.append((grown, (na, nb, nc, nd), nden))
    results.sort(key=lambda item: word_sort_key(item[0]))
    entries = tuple((Word(ls), ell) for ls, ell in results)
    return LengthSpectrum(
        presentation=presentation,
        prime=p,
        max_len=max_len,
        entries=entries,
        fingerprint=rep.fundamental(),
    )


@dataclass(frozen=True)
class SpectrumComparison:
    entries_equal: bool
    fingerprints_equal: bool
    differing: Tuple[Tuple[Word, int, int], ...]

    @property
    def identical(self) -> bool:
        return self.entries_equal and self.fingerprints_equal


def compare_spectra(
    left: LengthSpectrum, right: LengthSpectrum
) -> SpectrumComparison:
    """Entrywise comparison; shapes (presentation, prime, bound) must match."""
    if left.presentation != right.presentation:
        raise ShapeMismatchError("spectra over different presentations")
    if left.prime != right.prime:
        raise ShapeMismatchError("spectra over different primes")
    if left.max_len != right.max_len:
        raise ShapeMismatchError("spectra with different length bounds")
    differing: List[Tuple[Word, int, int]] = []
    for (w, l1), (_, l2) in zip(left.entries, right.entries):
        if l1 != l2:
            differing.append((w, l1, l2))
    fingerprints_equal = (
        left.fingerprint.entries == right.fingerprint.entries
    )
    return SpectrumComparison(
        entries_equal=not differing,
        fingerprints_equal=fingerprints_equal,
        differing=tuple(differing),
    )


def to_tsv(spec: LengthSpectrum) -> str:
    """Deterministic TSV: header block, fingerprint block, then rows."""
    lines = [
        f"# presentation\t{spec.presentation.descriptor()}",
        f"# prime\t{spec.prime}",
        f"# max_len\t{spec.max_len}",
    ]
    for key, value in spec.fingerprint.ordered():
        lines.append(f"# fingerprint\t{variable_name(key)}\t{value}")
    lines.append("word\tlength")
    for w, ell in spec.entries:
        lines.append(f"{word_to_text(w, spec.presentation)}\t{ell}")
    return "\n".join(lines) + "\n"
