"""BELLSPEC v1: a line-oriented text format for inequalities, games, and
strategies.

Files are UTF-8 with LF line endings; ``#`` starts a comment; tokens are
whitespace-separated.  The first meaningful line declares the type::

    bell correlation v1      full-correlation inequality
    bell weighted v1         weighted-sum inequality
    game v1                  nonlocal game
    strategy deterministic v1
    strategy quantum v1

Bodies (one keyword per line)::

    parties <n>
    settings <m_1> ... <m_n>
    coeff <s_1> ... <s_n> <real>            # correlation only
    bound <real>                            # correlation only
    alphabet <party> <input> <label> ...    # weighted / game
    weight <s_1> ... <s_n> <real>           # weighted
    prob <s_1> ... <s_n> <real>             # game
    win <s_1> ... <s_n> : <tuple> ...       # weighted / game, tuple = (l,...,l)
    smin <real> ; smax <real>               # weighted only
    respond <party> <input> <label>         # deterministic strategy
    dims <d_1> ... <d_n>                    # quantum strategy
    state <re> <im> ...                     # row vector, party-major kron order
    proj <party> <input> <label> <re> <im> ...   # d^2 row-major pairs

Serialization is canonical: keys in lexicographic order, winning tuples
sorted, reals printed with 17 significant digits, so equal values always
produce identical bytes and ``serialize(parse(serialize(x))) ==
serialize(x)``.
"""

from __future__ import annotations

import math
import re

from .errors import BellSpecSyntaxError, VersionUnsupported
from .model import (
    CorrelationInequality,
    DeterministicStrategy,
    NonlocalGame,
    ProjectiveMeasurement,
    QuantumStrategy,
    WeightedSumInequality,
)

import numpy as np

_INT_RE = re.compile(r"^[+-]?\d+$")
_REAL_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")
_TUPLE_RE = re.compile(r"^\([+-]?\d+(,[+-]?\d+)*\)$")


def _fmt_real(x: float) -> str:
    if x == 0.0:
        x = 0.0
    return f"{x:.17g}"


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _fmt_tuple(t) -> str:
    return "(" + ",".join(str(int(o)) for o in t) + ")"


def _alphabet_lines(parties, settings, alphabets) -> list[str]:
    lines = []
    for i in range(1, parties + 1):
        for x in range(1, settings[i - 1] + 1):
            labels = " ".join(str(l) for l in alphabets[i - 1][x - 1])
            lines.append(f"alphabet {i} {x} {labels}")
    return lines


def _win_lines(winning_sets) -> list[str]:
    lines = []
    for s in sorted(winning_sets):
        tuples = " ".join(_fmt_tuple(t) for t in sorted(winning_sets[s]))
        key = " ".join(str(k) for k in s)
        lines.append(f"win {key} :" + (" " + tuples if tuples else ""))
    return lines


def serialize(value) -> str:
    """Canonical BELLSPEC text for any domain value."""
    if isinstance(value, CorrelationInequality):
        lines = [
            "bell correlation v1",
            f"parties {value.parties}",
            "settings " + " ".join(str(m) for m in value.settings),
        ]
        for s in sorted(value.coefficients):
            key = " ".join(str(k) for k in s)
            lines.append(f"coeff {key} {_fmt_real(value.coefficients[s])}")
        lines.append(f"bound {_fmt_real(value.classical_bound)}")
    elif isinstance(value, WeightedSumInequality):
        lines = [
            "bell weighted v1",
            f"parties {value.parties}",
            "settings " + " ".join(str(m) for m in value.settings),
        ]
        lines += _alphabet_lines(value.parties, value.settings, value.outcome_alphabets)
        for s in sorted(value.weights):
            key = " ".join(str(k) for k in s)
            lines.append(f"weight {key} {_fmt_real(value.weights[s])}")
        lines += _win_lines(value.winning_sets)
        lines.append(f"smin {_fmt_real(value.s_min)}")
        lines.append(f"smax {_fmt_real(value.s_max)}")
    elif isinstance(value, NonlocalGame):
        lines = [
            "game v1",
            f"parties {value.parties}",
            "settings " + " ".join(str(m) for m in value.inputs),
        ]
        lines += _alphabet_lines(value.parties, value.inputs, value.outcome_alphabets)
        for s in sorted(value.input_distribution):
            key = " ".join(str(k) for k in s)
            lines.append(f"prob {key} {_fmt_real(value.input_distribution[s])}")
        lines += _win_lines(value.truth_table)
    elif isinstance(value, DeterministicStrategy):
        lines = ["strategy deterministic v1"]
        for i in range(1, value.parties + 1):
            for x in range(1, value.input_counts[i - 1] + 1):
                lines.append(f"respond {i} {x} {value.response(i, x)}")
    elif isinstance(value, QuantumStrategy):
        lines = [
            "strategy quantum v1",
            "dims " + " ".join(str(d) for d in value.local_dims),
            "state "
            + " ".join(f"{_fmt_real(z.real)} {_fmt_real(z.imag)}" for z in value.state),
        ]
        for i in range(1, value.parties + 1):
            for x in range(1, value.input_counts[i - 1] + 1):
                meas = value.measurement(i, x)
                for label, proj in zip(meas.labels, meas.projectors):
                    entries = " ".join(
                        f"{_fmt_real(z.real)} {_fmt_real(z.imag)}" for z in proj.reshape(-1)
                    )
                    lines.append(f"proj {i} {x} {label} {entries}")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

class _Token:
    __slots__ = ("text", "line", "column")

    def __init__(self, text: str, line: int, column: int):
        self.text = text
        self.line = line
        self.column = column


def _tokenize(text: str) -> list[list[_Token]]:
    lines = []
    for line_no, raw in enumerate(text.split("\n"), start=1):
        body = raw.split("#", 1)[0]
        tokens = [
            _Token(m.group(0), line_no, m.start() + 1)
            for m in re.finditer(r"\S+", body)
        ]
        if tokens:
            lines.append(tokens)
    return lines


def _err(tok: _Token, message: str) -> BellSpecSyntaxError:
    return BellSpecSyntaxError(message, line=tok.line, column=tok.column)


def _parse_int(tok: _Token) -> int:
    if not _INT_RE.match(tok.text):
        raise _err(tok, f"expected an integer, got {tok.text!r}")
    return int(tok.text)


def _parse_real(tok: _Token) -> float:
    if not _REAL_RE.match(tok.text):
        raise _err(tok, f"expected a real number, got {tok.text!r}")
    value = float(tok.text)
    if not math.isfinite(value):
        raise _err(tok, f"real literal {tok.text!r} overflows double precision")
    return value


def _parse_tuple(tok: _Token) -> tuple[int, ...]:
    if not _TUPLE_RE.match(tok.text):
        raise _err(tok, f"expected an outcome tuple like (1,-1), got {tok.text!r}")
    return tuple(int(p) for p in tok.text[1:-1].split(","))


def _expect_count(tokens: list[_Token], count: int) -> None:
    if len(tokens) - 1 < count:
        raise _err(tokens[0], f"{tokens[0].text!r} line needs {count} argument(s)")
    if len(tokens) - 1 > count:
        raise _err(tokens[count + 1], "unexpected trailing token")


class _Fields:
    """Keyword lines collected per file, with duplicate detection."""

    def __init__(self):
        self.single: dict[str, list[_Token]] = {}
        self.multi: dict[str, list[list[_Token]]] = {}

    def add_single(self, tokens: list[_Token]) -> None:
        key = tokens[0].text
        if key in self.single:
            raise _err(tokens[0], f"duplicate {key!r} line")
        self.single[key] = tokens

    def add_multi(self, tokens: list[_Token]) -> None:
        self.multi.setdefault(tokens[0].text, []).append(tokens)

    def require(self, key: str, last: _Token) -> list[_Token]:
        if key not in self.single:
            raise BellSpecSyntaxError(f"missing {key!r} line", line=last.line)
        return self.single[key]


_HEADERS = {
    ("bell", "correlation"): "correlation",
    ("bell", "weighted"): "weighted",
    ("game",): "game",
    ("strategy", "deterministic"): "deterministic",
    ("strategy", "quantum"): "quantum",
}

_SINGLE_KEYWORDS = {"parties", "settings", "bound", "smin", "smax", "dims", "state"}
_MULTI_KEYWORDS = {"coeff", "alphabet", "weight", "prob", "win", "respond", "proj"}


def parse(text):
    """Parse BELLSPEC text into a domain value.

    Raises :class:`BellSpecSyntaxError` (with line/column) on malformed
    input, :class:`VersionUnsupported` on unknown format versions, and
    :class:`~bellgame.errors.ValidationError` when the file is well-formed
    but the value violates a domain invariant."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise BellSpecSyntaxError(f"not valid UTF-8: {exc}") from None
    lines = _tokenize(text)
    if not lines:
        raise BellSpecSyntaxError("empty file")
    header = lines[0]
    words = tuple(t.text for t in header)
    kind = _HEADERS.get(words[:-1])
    if kind is None or len(words) < 2:
        raise _err(header[0], f"unknown header {' '.join(words)!r}")
    if words[-1] != "v1":
        raise VersionUnsupported(
            f"unsupported format version {words[-1]!r}", line=header[0].line
        )

    fields = _Fields()
    for tokens in lines[1:]:
        key = tokens[0].text
        if key in _SINGLE_KEYWORDS:
            fields.add_single(tokens)
        elif key in _MULTI_KEYWORDS:
            fields.add_multi(tokens)
        else:
            raise _err(tokens[0], f"unknown keyword {key!r}")
    last = lines[-1][0]

    if kind == "correlation":
        return _build_correlation(fields, last)
    if kind == "weighted":
        return _build_weighted(fields, last)
    if kind == "game":
        return _build_game(fields, last)
    if kind == "deterministic":
        return _build_deterministic(fields, last)
    return _build_quantum(fields, last)


def _parties_settings(fields: _Fields, last: _Token) -> tuple[int, tuple[int, ...]]:
    ptoks = fields.require("parties", last)
    _expect_count(ptoks, 1)
    parties = _parse_int(ptoks[1])
    if parties < 1:
        raise _err(ptoks[1], "parties must be >= 1")
    stoks = fields.require("settings", last)
    _expect_count(stoks, parties)
    return parties, tuple(_parse_int(t) for t in stoks[1:])


def _setting_key(tokens: list[_Token], parties: int) -> tuple[int, ...]:
    return tuple(_parse_int(t) for t in tokens[1 : parties + 1])


def _build_correlation(fields: _Fields, last: _Token) -> CorrelationInequality:
    parties, settings = _parties_settings(fields, last)
    coeffs = {}
    for tokens in fields.multi.get("coeff", []):
        _expect_count(tokens, parties + 1)
        key = _setting_key(tokens, parties)
        if key in coeffs:
            raise _err(tokens[0], f"duplicate coeff for setting {key}")
        coeffs[key] = _parse_real(tokens[parties + 1])
    btoks = fields.require("bound", last)
    _expect_count(btoks, 1)
    return CorrelationInequality(
        parties=parties,
        settings=settings,
        coefficients=coeffs,
        classical_bound=_parse_real(btoks[1]),
    )


def _build_alphabets(fields, parties, settings):
    table: dict[tuple[int, int], tuple[int, ...]] = {}
    for tokens in fields.multi.get("alphabet", []):
        if len(tokens) < 4:
            raise _err(tokens[0], "alphabet line needs party, input, and labels")
        party = _parse_int(tokens[1])
        inp = _parse_int(tokens[2])
        if not (1 <= party <= parties) or not (1 <= inp <= settings[party - 1]):
            raise _err(tokens[1], f"alphabet for out-of-range party/input ({party}, {inp})")
        if (party, inp) in table:
            raise _err(tokens[0], f"duplicate alphabet for party {party}, input {inp}")
        table[party, inp] = tuple(_parse_int(t) for t in tokens[3:])
    for i in range(1, parties + 1):
        for x in range(1, settings[i - 1] + 1):
            if (i, x) not in table:
                raise BellSpecSyntaxError(f"missing alphabet for party {i}, input {x}")
    return tuple(
        tuple(table[i, x] for x in range(1, settings[i - 1] + 1))
        for i in range(1, parties + 1)
    )


def _build_value_map(fields, keyword, parties) -> dict[tuple[int, ...], float]:
    out = {}
    for tokens in fields.multi.get(keyword, []):
        _expect_count(tokens, parties + 1)
        key = _setting_key(tokens, parties)
        if key in out:
            raise _err(tokens[0], f"duplicate {keyword} for setting {key}")
        out[key] = _parse_real(tokens[parties + 1])
    return out


def _build_winning(fields, parties) -> dict[tuple[int, ...], frozenset]:
    out = {}
    for tokens in fields.multi.get("win", []):
        if len(tokens) < parties + 2:
            raise _err(tokens[0], f"win line needs {parties} setting indices and ':'")
        key = _setting_key(tokens, parties)
        if tokens[parties + 1].text != ":":
            raise _err(tokens[parties + 1], "expected ':' after the setting vector")
        if key in out:
            raise _err(tokens[0], f"duplicate win line for setting {key}")
        out[key] = frozenset(_parse_tuple(t) for t in tokens[parties + 2 :])
    return out


def _build_weighted(fields: _Fields, last: _Token) -> WeightedSumInequality:
    parties, settings = _parties_settings(fields, last)
    alphabets = _build_alphabets(fields, parties, settings)
    weights = _build_value_map(fields, "weight", parties)
    winning = _build_winning(fields, parties)
    smin = fields.require("smin", last)
    _expect_count(smin, 1)
    smax = fields.require("smax", last)
    _expect_count(smax, 1)
    return WeightedSumInequality(
        parties=parties,
        settings=settings,
        outcome_alphabets=alphabets,
        weights=weights,
        winning_sets=winning,
        s_min=_parse_real(smin[1]),
        s_max=_parse_real(smax[1]),
    )


def _build_game(fields: _Fields, last: _Token) -> NonlocalGame:
    parties, settings = _parties_settings(fields, last)
    alphabets = _build_alphabets(fields, parties, settings)
    probs = _build_value_map(fields, "prob", parties)
    winning = _build_winning(fields, parties)
    return NonlocalGame(
        parties=parties,
        inputs=settings,
        outcome_alphabets=alphabets,
        input_distribution=probs,
        truth_table=winning,
    )


def _build_deterministic(fields: _Fields, last: _Token) -> DeterministicStrategy:
    table: dict[tuple[int, int], int] = {}
    for tokens in fields.multi.get("respond", []):
        _expect_count(tokens, 3)
        party = _parse_int(tokens[1])
        inp = _parse_int(tokens[2])
        if party < 1 or inp < 1:
            raise _err(tokens[1], "party and input indices are 1-based")
        if (party, inp) in table:
            raise _err(tokens[0], f"duplicate respond line for party {party}, input {inp}")
        table[party, inp] = _parse_int(tokens[3])
    if not table:
        raise BellSpecSyntaxError("strategy has no respond lines", line=last.line)
    parties = max(p for p, _ in table)
    responses = []
    for i in range(1, parties + 1):
        inputs = [x for p, x in table if p == i]
        if not inputs:
            raise BellSpecSyntaxError(f"no respond lines for party {i}", line=last.line)
        m = max(inputs)
        row = []
        for x in range(1, m + 1):
            if (i, x) not in table:
                raise BellSpecSyntaxError(
                    f"missing respond line for party {i}, input {x}", line=last.line
                )
            row.append(table[i, x])
        responses.append(tuple(row))
    return DeterministicStrategy(tuple(responses))


def _build_quantum(fields: _Fields, last: _Token) -> QuantumStrategy:
    dtoks = fields.require("dims", last)
    if len(dtoks) < 2:
        raise _err(dtoks[0], "dims line needs at least one dimension")
    dims = tuple(_parse_int(t) for t in dtoks[1:])
    total = 1
    for d in dims:
        total *= d

    stoks = fields.require("state", last)
    _expect_count(stoks, 2 * total)
    reals = [_parse_real(t) for t in stoks[1:]]
    state = np.array(reals[0::2]) + 1j * np.array(reals[1::2])

    grouped: dict[tuple[int, int], list[tuple[int, np.ndarray]]] = {}
    for tokens in fields.multi.get("proj", []):
        if len(tokens) < 4:
            raise _err(tokens[0], "proj line needs party, input, and outcome label")
        party = _parse_int(tokens[1])
        inp = _parse_int(tokens[2])
        label = _parse_int(tokens[3])
        if not (1 <= party <= len(dims)) or inp < 1:
            raise _err(tokens[1], f"proj for out-of-range party/input ({party}, {inp})")
        d = dims[party - 1]
        _expect_count(tokens, 3 + 2 * d * d)
        entries = [_parse_real(t) for t in tokens[4:]]
        proj = (np.array(entries[0::2]) + 1j * np.array(entries[1::2])).reshape(d, d)
        bucket = grouped.setdefault((party, inp), [])
        if any(label == known for known, _ in bucket):
            raise _err(tokens[3], f"duplicate proj for party {party}, input {inp}, label {label}")
        bucket.append((label, proj))

    measurements = []
    for i in range(1, len(dims) + 1):
        inputs = [x for p, x in grouped if p == i]
        if not inputs:
            raise BellSpecSyntaxError(f"no proj lines for party {i}", line=last.line)
        m = max(inputs)
        per_input = []
        for x in range(1, m + 1):
            if (i, x) not in grouped:
                raise BellSpecSyntaxError(
                    f"missing proj lines for party {i}, input {x}", line=last.line
                )
            bucket = grouped[i, x]
            per_input.append(
                ProjectiveMeasurement(
                    labels=tuple(label for label, _ in bucket),
                    projectors=tuple(proj for _, proj in bucket),
                )
            )
        measurements.append(tuple(per_input))
    return QuantumStrategy(local_dims=dims, state=state, measurements=tuple(measurements))
