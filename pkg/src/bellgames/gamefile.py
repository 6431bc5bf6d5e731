"""Plain-text game files.

Example::

    # lines starting with '#' are comments
    label: example1
    types: 2 2
    actions: 2 2
    prior:
      0.25 0.25
      0.25 0.25
    payoff1:
      4 -4 -4 4      # x1=0 x2=0, a1a2 = 00 01 10 11
      ...
    payoff2:
      ...

``prior`` holds ``types[0]`` rows of ``types[1]`` numbers. Payoffs are
flattened row-major over ``(x1, x2, a1, a2)`` and may be split across lines
freely. Numbers use a decimal point, optional exponent, or a fraction such
as ``1/4``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from importlib import resources

import numpy as np

from .errors import GameSyntaxError, GameValidationError
from .game import Game, validate_game

KEYS = ("label", "types", "actions", "prior", "payoff1", "payoff2")
REQUIRED = ("types", "actions", "prior", "payoff1", "payoff2")
BUNDLED = ("example1", "example2", "example3")

_KEY_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*:(.*)$")
_NUM_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?(/\d+)?$")


def _number(tok: str, line: int, col: int) -> float:
    if not _NUM_RE.match(tok):
        raise GameSyntaxError(f"not a number: {tok!r}", line, col)
    if "/" in tok:
        num, den = tok.split("/")
        if int(den) == 0:
            raise GameSyntaxError(f"zero denominator in {tok!r}", line, col)
        return float(Fraction(num) / Fraction(int(den)))
    return float(tok)


def _tokens(text: str, line: int, offset: int):
    for m in re.finditer(r"\S+", text):
        yield m.group(0), line, offset + m.start() + 1


def parse_game(text: str) -> Game:
    """Parse and validate a game document.

    Raises :class:`GameSyntaxError` (with line and column) for malformed
    input and :class:`GameValidationError` when the parsed game violates an
    invariant.
    """
    fields: dict[str, list] = {}
    where: dict[str, int] = {}
    label = None
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        m = _KEY_RE.match(body)
        if m:
            key = m.group(1)
            if key not in KEYS:
                raise GameSyntaxError(f"unknown field {key!r}", lineno, body.index(key) + 1)
            if key in fields or (key == "label" and label is not None):
                raise GameSyntaxError(f"duplicate field {key!r}", lineno, body.index(key) + 1)
            where[key] = lineno
            if key == "label":
                label = m.group(2).strip()
                current = None
                continue
            current = key
            fields[key] = []
            rest, start = m.group(2), m.start(2)
        else:
            if current is None:
                raise GameSyntaxError("value outside of any field", lineno, len(body) - len(body.lstrip()) + 1)
            rest, start = body, 0
        row = [_number(tok, ln, col) for tok, ln, col in _tokens(rest, lineno, start)]
        if row:
            fields[current].append((lineno, row))

    for key in REQUIRED:
        if key not in fields:
            raise GameSyntaxError(f"missing required field {key!r}")

    def flat(key):
        return [v for _, row in fields[key] for v in row]

    def pair(key):
        vals = flat(key)
        if len(vals) != 2 or any(v != int(v) or v < 1 for v in vals):
            raise GameSyntaxError(f"{key!r} needs two positive integers, got {vals}", where[key], 1)
        return int(vals[0]), int(vals[1])

    n_types, n_actions = pair("types"), pair("actions")
    m1, m2 = n_types
    k1, k2 = n_actions

    prior_rows = fields["prior"]
    if len(prior_rows) != m1 or any(len(r) != m2 for _, r in prior_rows):
        shape = [len(r) for _, r in prior_rows]
        raise GameSyntaxError(
            f"'prior' needs {m1} rows of {m2} numbers, got row lengths {shape}", where["prior"], 1
        )
    prior = np.array([r for _, r in prior_rows])

    payoffs = []
    for key in ("payoff1", "payoff2"):
        vals = flat(key)
        if len(vals) != m1 * m2 * k1 * k2:
            raise GameSyntaxError(
                f"{key!r} needs {m1 * m2 * k1 * k2} numbers, got {len(vals)}", where[key], 1
            )
        payoffs.append(np.array(vals).reshape(m1, m2, k1, k2))

    g = Game(n_types, n_actions, prior, payoffs[0], payoffs[1], label or "")
    problems = validate_game(g)
    if problems:
        raise GameValidationError(problems)
    return g


def _fmt(v: float) -> str:
    v = float(v)
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


def format_game(g: Game) -> str:
    """Canonical text form; ``parse_game(format_game(g))`` reproduces ``g`` exactly."""
    m1, m2, k1, k2 = g.shape
    out = [f"label: {g.label}", f"types: {m1} {m2}", f"actions: {k1} {k2}", "prior:"]
    for row in g.prior:
        out.append("  " + " ".join(_fmt(v) for v in row))
    for key, tensor in (("payoff1", g.payoff1), ("payoff2", g.payoff2)):
        out.append(f"{key}:")
        for x1 in range(m1):
            for x2 in range(m2):
                vals = " ".join(_fmt(v) for v in tensor[x1, x2].ravel())
                out.append(f"  {vals}  # x1={x1} x2={x2}")
    return "\n".join(out) + "\n"


def bundled_text(name: str) -> str:
    if name not in BUNDLED:
        raise KeyError(f"no bundled game {name!r}; choose from {', '.join(BUNDLED)}")
    return resources.files("bellgames").joinpath("data", f"{name}.game").read_text(encoding="utf-8")


def load_bundled(name: str) -> Game:
    return parse_game(bundled_text(name))
