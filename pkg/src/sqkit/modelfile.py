"""Plain-text model files.

Grammar (one statement per line, ``#`` starts a comment)::

    temperature <float>
    chemical_potential <float>
    statistics fermi_dirac | bose_einstein
    hermitian_conjugate on | off        # applies to the amplitude lines after it
    <re> <im> [<to subindices>] [<from subindices>]

Subindices are non-negative integers separated by commas or spaces, e.g.
``1.0 0 [0, 1] [0, 0]``. The model is constructed after the last line.
"""
from __future__ import annotations

import re
from pathlib import Path

from .errors import IndexCollision, ParseError, SqkitError
from .index import Index
from .model import HoppingAmplitude, Model, Statistics

_AMPLITUDE = re.compile(r"^(\S+)\s+(\S+)\s+\[([^\]]*)\]\s*\[([^\]]*)\]$")
_SWITCH = {"on": True, "off": False, "true": True, "false": False, "1": True, "0": False}


def _float(text, lineno, what):
    try:
        return float(text)
    except ValueError:
        raise ParseError(lineno, f"invalid {what} {text!r}") from None


def _index(text, lineno):
    try:
        index = Index.parse(text)
    except (ValueError, TypeError, SqkitError) as exc:
        raise ParseError(lineno, f"bad index [{text}]: {exc}") from None
    if index.is_pattern:
        raise ParseError(lineno, f"specifiers are not allowed in model files: [{text}]")
    return index


def parse_model(lines) -> Model:
    model = Model()
    hc = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _AMPLITUDE.match(line)
        if m:
            value = complex(_float(m[1], lineno, "real part"), _float(m[2], lineno, "imaginary part"))
            amp = HoppingAmplitude(value, _index(m[3], lineno), _index(m[4], lineno))
            try:
                model.add_amplitude(amp, hc)
            except IndexCollision as exc:
                raise IndexCollision(str(exc), line=lineno) from None
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(lineno, f"cannot parse {line!r}")
        key, arg = parts
        if key == "temperature":
            t = _float(arg, lineno, "temperature")
            if t < 0:
                raise ParseError(lineno, f"negative temperature {t}")
            model.temperature = t
        elif key == "chemical_potential":
            model.chemical_potential = _float(arg, lineno, "chemical potential")
        elif key == "statistics":
            try:
                model.statistics = Statistics(arg.lower())
            except ValueError:
                raise ParseError(lineno, f"unknown statistics {arg!r}") from None
        elif key == "hermitian_conjugate":
            if arg.lower() not in _SWITCH:
                raise ParseError(lineno, f"expected on/off, got {arg!r}")
            hc = _SWITCH[arg.lower()]
        else:
            raise ParseError(lineno, f"cannot parse {line!r}")
    model.construct()
    return model


def load_model_file(path) -> Model:
    with open(Path(path)) as fh:
        return parse_model(fh)
