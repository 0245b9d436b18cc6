"""Registry of test functions on [0, 1] used by the experiment suites."""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError
from .operators import BernsteinPoly

__all__ = ["TestFunction", "corpus_default", "lookup"]

CLASSES = ("BV", "AC", "C3")


@dataclass(frozen=True)
class TestFunction:
    """A function with whatever structure the analysis can exploit.

    ``cls`` is the smoothness class: ``"BV"`` (bounded variation only),
    ``"AC"`` (absolutely continuous, ``d1`` given a.e.) or ``"C3"``
    (``d1``, ``d2``, ``d3`` all given).  ``breakpoints`` are the interior
    points where f or one of its derivatives is not smooth.  ``poly`` is the
    exact Bernstein form when f is a polynomial.
    """

    __test__ = False  # not a pytest class

    id: str
    cls: str
    f: Callable
    d1: Optional[Callable] = None
    d2: Optional[Callable] = None
    d3: Optional[Callable] = None
    breakpoints: tuple = ()
    known_tv: Optional[float] = None
    known_l1_norms: Optional[tuple] = None
    poly: Optional[BernsteinPoly] = None
    description: str = field(default="", compare=False)

    def __post_init__(self):
        if self.cls not in CLASSES:
            raise DomainError(f"unknown smoothness class {self.cls!r}")
        if self.cls == "C3" and None in (self.d1, self.d2, self.d3):
            raise DomainError(f"{self.id}: a C3 entry must supply three derivatives")
        if self.cls == "AC" and self.d1 is None:
            raise DomainError(f"{self.id}: an AC entry must supply its derivative")
        bps = tuple(float(b) for b in self.breakpoints)
        if list(bps) != sorted(bps) or any(not 0.0 <= b <= 1.0 for b in bps):
            raise DomainError(f"{self.id}: breakpoints must be sorted and inside [0, 1]")
        object.__setattr__(self, "breakpoints", bps)

    @property
    def is_ac(self):
        return self.cls in ("AC", "C3")

    @property
    def is_c3(self):
        return self.cls == "C3"

    @property
    def f0(self):
        return float(self.f(np.array([0.0]))[0])

    def __call__(self, t):
        return self.f(t)


def _const(c):
    return lambda t: np.full(np.shape(t), float(c))


def _sawtooth(t):
    return 0.5 - np.abs(np.mod(3.0 * np.asarray(t), 1.0) - 0.5)


def _sawtooth_d1(t):
    return np.where(np.mod(3.0 * np.asarray(t), 1.0) < 0.5, 3.0, -3.0)


def corpus_default():
    """The standard corpus, sorted by id."""
    e1 = np.e - 1.0
    pi = np.pi
    zero = _const(0.0)
    entries = [
        TestFunction("const_one", "C3", _const(1.0), zero, zero, zero, known_tv=0.0,
                     known_l1_norms=(0.0, 0.0, 0.0), poly=BernsteinPoly.exact([1]),
                     description="f = 1"),
        TestFunction("const_neg", "C3", _const(-2.0), zero, zero, zero, known_tv=0.0,
                     known_l1_norms=(0.0, 0.0, 0.0), poly=BernsteinPoly.exact([-2]),
                     description="f = -2"),
        TestFunction("id", "C3", lambda t: np.asarray(t, dtype=float), _const(1.0), zero, zero,
                     known_tv=1.0, known_l1_norms=(1.0, 0.0, 0.0), poly=BernsteinPoly.exact([0, 1]),
                     description="f = t"),
        TestFunction("t2", "C3", lambda t: np.asarray(t, dtype=float) ** 2, lambda t: 2.0 * np.asarray(t),
                     _const(2.0), zero, known_tv=1.0, known_l1_norms=(1.0, 2.0, 0.0),
                     poly=BernsteinPoly.exact([0, 0, 1]), description="f = t^2"),
        TestFunction("t3", "C3", lambda t: np.asarray(t, dtype=float) ** 3, lambda t: 3.0 * np.asarray(t) ** 2,
                     lambda t: 6.0 * np.asarray(t), _const(6.0), known_tv=1.0,
                     known_l1_norms=(1.0, 3.0, 6.0), poly=BernsteinPoly.exact([0, 0, 0, 1]),
                     description="f = t^3"),
        TestFunction("abs_half", "AC", lambda t: np.abs(np.asarray(t) - 0.5),
                     lambda t: np.sign(np.asarray(t) - 0.5), breakpoints=(0.5,), known_tv=1.0,
                     description="f = |t - 1/2|"),
        TestFunction("step_half", "BV", lambda t: np.where(np.asarray(t) >= 0.5, 1.0, 0.0),
                     breakpoints=(0.5,), known_tv=1.0, description="0 on [0, 1/2), 1 on [1/2, 1]"),
        TestFunction("sin2pi", "C3", lambda t: np.sin(2 * pi * np.asarray(t)),
                     lambda t: 2 * pi * np.cos(2 * pi * np.asarray(t)),
                     lambda t: -4 * pi**2 * np.sin(2 * pi * np.asarray(t)),
                     lambda t: -8 * pi**3 * np.cos(2 * pi * np.asarray(t)),
                     known_tv=4.0, known_l1_norms=(4.0, 8 * pi, 16 * pi**2),
                     description="f = sin(2 pi t)"),
        TestFunction("exp", "C3", np.exp, np.exp, np.exp, np.exp, known_tv=e1,
                     known_l1_norms=(e1, e1, e1), description="f = e^t"),
        TestFunction("sawtooth3", "AC", _sawtooth, _sawtooth_d1,
                     breakpoints=tuple(j / 6 for j in range(1, 6)), known_tv=3.0,
                     description="three tent-shaped teeth of height 1/2"),
    ]
    return sorted(entries, key=lambda e: e.id)


def lookup(ids, corpus=None):
    """Resolve a list of ids (or ``"all"``) against the corpus."""
    corpus = corpus or corpus_default()
    table = {e.id: e for e in corpus}
    if ids == "all" or ids == ["all"]:
        return list(corpus)
    out = []
    for i in ids:
        if i not in table:
            raise KeyError(f"unknown function id {i!r}; known: {', '.join(sorted(table))}")
        out.append(table[i])
    return out
