"""Immutable amplitude vector over the broken Fock set {0, 3, 4, 5, ...}."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from .exceptions import InvalidFockIndex

FAMILIES = ("gis", "nlcs", "gk", "even", "odd", "raw")


def _encode(value: Any) -> Any:
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


@dataclass(frozen=True)
class StateVector:
    """Amplitudes ``coeffs[n] = <n|psi>`` stored densely for n = 0..n_max.

    Entries at n = 1 and n = 2 must vanish; those levels do not exist in
    this oscillator's spectrum.
    """

    coeffs: np.ndarray
    family: str = "raw"
    params: Mapping[str, Any] = field(default_factory=dict)
    truncation_tail: float = 0.0

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim != 1:
            raise ValueError("coeffs must be one-dimensional")
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        for bad in (1, 2):
            if bad < c.size and c[bad] != 0:
                raise InvalidFockIndex(f"amplitude on forbidden level |{bad}>")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "params", dict(self.params))

    @property
    def n_max(self) -> int:
        return self.coeffs.size - 1

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.coeffs)

    def amplitude(self, n: int) -> complex:
        if n < 0:
            raise InvalidFockIndex(n)
        return complex(self.coeffs[n]) if n <= self.n_max else 0j

    def as_dict(self) -> dict[int, complex]:
        return {int(n): complex(self.coeffs[n]) for n in self.support}

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.coeffs) ** 2

    def padded(self, n_max: int) -> np.ndarray:
        """Writable copy of the amplitudes zero-padded to length ``n_max + 1``."""
        out = np.zeros(max(n_max, self.n_max) + 1, dtype=complex)
        out[: self.coeffs.size] = self.coeffs
        return out

    def inner(self, other: "StateVector") -> complex:
        n = max(self.n_max, other.n_max)
        return complex(np.vdot(self.padded(n), other.padded(n)))

    def to_json(self) -> str:
        doc = {
            "family": self.family,
            "parameters": {k: _encode(v) for k, v in self.params.items()},
            "n_max": self.n_max,
            "amplitudes": [[int(n), float(self.coeffs[n].real), float(self.coeffs[n].imag)]
                           for n in self.support],
            "truncation_tail": float(self.truncation_tail),
        }
        return json.dumps(doc, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "StateVector":
        doc = json.loads(text)
        c = np.zeros(int(doc["n_max"]) + 1, dtype=complex)
        for n, re, im in doc["amplitudes"]:
            c[int(n)] = complex(re, im)
        params = {k: complex(*v) if isinstance(v, list) and len(v) == 2 else v
                  for k, v in doc.get("parameters", {}).items()}
        return cls(c, doc["family"], params, float(doc.get("truncation_tail", 0.0)))


def basis_state(n: int, n_max: int | None = None) -> StateVector:
    """The unit vector |n>."""
    if n in (1, 2) or n < 0:
        raise InvalidFockIndex(f"|{n}> is not a level of this oscillator")
    c = np.zeros((n_max if n_max is not None else n) + 1, dtype=complex)
    c[n] = 1.0
    return StateVector(c)
