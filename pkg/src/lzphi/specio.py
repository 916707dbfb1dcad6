"""Parse the line-oriented state-spec format and serialize relation reports.

Grammar (one directive per line, '#' starts a comment, values carry no
whitespace)::

    setting <key> <value>
    state <family> <key>=<value> ...
    relations <ID>[(<k>=<v>,...)] ...

Families: circular | rotor | spherical | pendulum. Complex numbers are
written ``(re,im)``; spherical coefficients as ``c=[(re,im),...]`` (or a
``{m:(re,im),...}`` map), rotor coefficients as ``c={m:(re,im),...}``.
Settings apply document-wide regardless of position. Integers must not
carry a decimal point; floats accept decimal and scientific notation.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
import re

from . import observables as obs
from .engine import DEFAULT_SETTINGS, EngineSettings
from .relations import CATALOG, RelationId, RelationParams, RelationReport
from .states import CircularState, PendulumState, RotorSuperposition, SphericalState


class SpecParseError(Exception):
    """Parse or validation failure with a stable code and source position."""

    def __init__(self, code: str, line: int, col: int, message: str):
        self.code = code
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: [{code}] {message}")


@dataclass(frozen=True)
class SpecDocument:
    settings: EngineSettings
    states: tuple  # of (name, State) pairs
    selections: tuple  # of (RelationId, RelationParams) pairs


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_INT_RE = re.compile(r"[+-]?\d+\Z")
_FLOAT_RE = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\Z")
_KIND_NAMES = {
    "Lz": obs.LZ,
    "Phi": obs.PHI,
    "PhiSquared": obs.PHI_SQUARED,
    "SinPhi": obs.SIN_PHI,
    "CosPhi": obs.COS_PHI,
    "Theta": obs.THETA,
    "ThetaPhi": obs.THETA_PHI,
}

_SETTING_KEYS = {
    "hbar": float,
    "tolerance": float,
    "phi_nodes": int,
    "theta_nodes": int,
    "hermite_nodes": int,
    "normalize": bool,
}


def parse(text: str, overrides: dict | None = None) -> SpecDocument:
    """Parse spec text into a validated document.

    ``overrides`` maps setting names to values that win over the
    document's own ``setting`` lines (the CLI flag precedence rule).
    Raises SpecParseError with a distinct code per failure class:
    ``syntax``, ``bad-value``, ``unknown-directive``, ``unknown-family``,
    ``unknown-setting``, ``unknown-key``, ``unknown-relation``,
    ``missing-field``, ``m-out-of-range``, ``not-normalized``,
    ``param-constraint``, ``empty-document``.
    """
    lines = text.splitlines()
    settings = _collect_settings(lines)
    if overrides:
        settings = replace(settings, **overrides)
    states: list = []
    selections: list = []
    auto = 0
    for lineno, raw in enumerate(lines, start=1):
        tokens = _tokens(raw)
        if not tokens:
            continue
        word, col = tokens[0]
        if word == "setting":
            continue
        if word == "state":
            auto += 1
            states.append(_parse_state(tokens, lineno, settings, auto))
        elif word == "relations":
            if len(tokens) == 1:
                raise SpecParseError("syntax", lineno, col, "relations line lists no IDs")
            for tok, tcol in tokens[1:]:
                selections.append(_parse_selection(tok, lineno, tcol))
        else:
            raise SpecParseError(
                "unknown-directive", lineno, col, f"unknown directive {word!r}"
            )
    if not states or not selections:
        raise SpecParseError(
            "empty-document", len(lines) + 1, 1, "need at least one state and one relation"
        )
    names = [n for n, _ in states]
    if len(set(names)) != len(names):
        raise SpecParseError("bad-value", len(lines) + 1, 1, "duplicate state names")
    return SpecDocument(settings=settings, states=tuple(states), selections=tuple(selections))


def _collect_settings(lines) -> EngineSettings:
    settings = DEFAULT_SETTINGS
    for lineno, raw in enumerate(lines, start=1):
        tokens = _tokens(raw)
        if not tokens or tokens[0][0] != "setting":
            continue
        if len(tokens) != 3:
            raise SpecParseError(
                "syntax", lineno, tokens[0][1], "setting lines read: setting <key> <value>"
            )
        (key, kcol), (value, vcol) = tokens[1], tokens[2]
        if key not in _SETTING_KEYS:
            raise SpecParseError("unknown-setting", lineno, kcol, f"unknown setting {key!r}")
        want = _SETTING_KEYS[key]
        if want is bool:
            if value not in ("true", "false"):
                raise SpecParseError("bad-value", lineno, vcol, "normalize takes true or false")
            settings = replace(settings, **{key: value == "true"})
        elif want is int:
            settings = replace(settings, **{key: _parse_int(value, lineno, vcol)})
        else:
            settings = replace(settings, **{key: _parse_float(value, lineno, vcol)})
    return settings


def _tokens(raw: str):
    body = raw.split("#", 1)[0]
    out = []
    for match in re.finditer(r"\S+", body):
        out.append((match.group(), match.start() + 1))
    return out


def _parse_int(text: str, lineno: int, col: int) -> int:
    if not _INT_RE.match(text):
        raise SpecParseError(
            "bad-value", lineno, col, f"expected an integer without a decimal point, got {text!r}"
        )
    return int(text)


def _parse_float(text: str, lineno: int, col: int) -> float:
    if not _FLOAT_RE.match(text):
        raise SpecParseError("bad-value", lineno, col, f"expected a number, got {text!r}")
    return float(text)


def _parse_complex(text: str, lineno: int, col: int) -> complex:
    if not (text.startswith("(") and text.endswith(")")) or text.count(",") != 1:
        raise SpecParseError("bad-value", lineno, col, f"complex values read (re,im), got {text!r}")
    re_part, im_part = text[1:-1].split(",")
    return complex(_parse_float(re_part, lineno, col), _parse_float(im_part, lineno, col))


def _split_top(text: str, sep: str):
    """Split on sep at bracket depth zero."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


def _parse_state(tokens, lineno, settings, auto_index):
    if len(tokens) < 2:
        raise SpecParseError("syntax", lineno, tokens[0][1], "state lines name a family")
    family, fcol = tokens[1]
    if family not in ("circular", "rotor", "spherical", "pendulum"):
        raise SpecParseError("unknown-family", lineno, fcol, f"unknown family {family!r}")
    fields = {}
    cols = {}
    for tok, col in tokens[2:]:
        if "=" not in tok:
            raise SpecParseError("syntax", lineno, col, f"expected key=value, got {tok!r}")
        key, value = tok.split("=", 1)
        if key in fields:
            raise SpecParseError("bad-value", lineno, col, f"duplicate key {key!r}")
        fields[key] = value
        cols[key] = col
    name = fields.pop("name", f"s{auto_index}")
    if not _NAME_RE.match(name):
        raise SpecParseError("bad-value", lineno, cols.get("name", fcol), f"bad state name {name!r}")
    hbar = _parse_float(fields.pop("hbar"), lineno, cols.get("hbar", fcol)) if "hbar" in fields else settings.hbar

    def take_int(key):
        if key not in fields:
            raise SpecParseError("missing-field", lineno, fcol, f"{family} state needs {key}=")
        return _parse_int(fields.pop(key), lineno, cols[key])

    def take_float(key, default):
        if key not in fields:
            return default
        return _parse_float(fields.pop(key), lineno, cols[key])

    try:
        if family == "circular":
            state = CircularState(m=take_int("m"), hbar=hbar)
        elif family == "pendulum":
            state = PendulumState(
                n=take_int("n"),
                inertia=take_float("inertia", 1.0),
                omega=take_float("omega", 1.0),
                hbar=hbar,
            )
        elif family == "rotor":
            cmap = _coeff_map(fields, cols, lineno, fcol)
            state = RotorSuperposition(cmap, hbar=hbar, normalize=settings.normalize)
        else:
            l = take_int("l")
            coeffs = _spherical_coeffs(l, fields, cols, lineno, fcol)
            state = SphericalState(
                l=l,
                coefficients=coeffs,
                hbar=hbar,
                inertia=take_float("inertia", 1.0),
                normalize=settings.normalize,
            )
    except SpecParseError:
        raise
    except ValueError as exc:
        code = "not-normalized" if "normalize" in str(exc) else "bad-value"
        raise SpecParseError(code, lineno, fcol, str(exc)) from exc
    if fields:
        stray = sorted(fields)[0]
        raise SpecParseError("unknown-key", lineno, cols[stray], f"unknown key {stray!r} for {family}")
    return (name, state)


def _coeff_map(fields, cols, lineno, fcol):
    if "c" not in fields:
        raise SpecParseError("missing-field", lineno, fcol, "rotor state needs c={m:(re,im),...}")
    text, col = fields.pop("c"), cols["c"]
    if not (text.startswith("{") and text.endswith("}")):
        raise SpecParseError("bad-value", lineno, col, "rotor coefficients read c={m:(re,im),...}")
    out = {}
    for item in _split_top(text[1:-1], ","):
        if not item:
            continue
        if ":" not in item:
            raise SpecParseError("bad-value", lineno, col, f"coefficient entries read m:(re,im), got {item!r}")
        m_text, c_text = item.split(":", 1)
        out[_parse_int(m_text, lineno, col)] = _parse_complex(c_text, lineno, col)
    if not out:
        raise SpecParseError("bad-value", lineno, col, "empty coefficient map")
    return out


def _spherical_coeffs(l, fields, cols, lineno, fcol):
    if "c" not in fields:
        raise SpecParseError("missing-field", lineno, fcol, "spherical state needs c=[...] or c={...}")
    text, col = fields.pop("c"), cols["c"]
    if text.startswith("{") and text.endswith("}"):
        cmap = {}
        for item in _split_top(text[1:-1], ","):
            if not item:
                continue
            if ":" not in item:
                raise SpecParseError(
                    "bad-value", lineno, col, f"coefficient entries read m:(re,im), got {item!r}"
                )
            m_text, c_text = item.split(":", 1)
            m = _parse_int(m_text, lineno, col)
            if abs(m) > l:
                raise SpecParseError("m-out-of-range", lineno, col, f"|m|={abs(m)} exceeds l={l}")
            cmap[m] = _parse_complex(c_text, lineno, col)
        return cmap
    if not (text.startswith("[") and text.endswith("]")):
        raise SpecParseError("bad-value", lineno, col, "spherical coefficients read c=[(re,im),...]")
    vec = [
        _parse_complex(item, lineno, col)
        for item in _split_top(text[1:-1], ",")
        if item
    ]
    if len(vec) != 2 * l + 1:
        raise SpecParseError("bad-value", lineno, col, f"need 2l+1={2 * l + 1} coefficients, got {len(vec)}")
    return vec


def _parse_selection(token: str, lineno: int, col: int):
    match = re.match(r"(R\d+)(\((.*)\))?\Z", token)
    if not match:
        raise SpecParseError("syntax", lineno, col, f"bad relation selection {token!r}")
    rid_text, _, inner = match.groups()
    try:
        rid = RelationId(rid_text)
    except ValueError:
        raise SpecParseError(
            "unknown-relation", lineno, col, f"unknown relation ID {rid_text!r}"
        ) from None
    kv = {}
    if inner:
        for item in _split_top(inner, ","):
            if "=" not in item:
                raise SpecParseError("syntax", lineno, col, f"relation params read k=v, got {item!r}")
            key, value = item.split("=", 1)
            kv[key] = value
    params = _build_params(rid, kv, lineno, col)
    return (rid, params)


def _build_params(rid, kv, lineno, col) -> RelationParams:
    _, wanted, _ = CATALOG[rid]
    for key in kv:
        if key not in wanted and not (key == "N" and rid == RelationId.R60):
            raise SpecParseError("unknown-key", lineno, col, f"{rid.value} takes no parameter {key!r}")
    if rid == RelationId.R8:
        if "alpha" not in kv:
            raise SpecParseError("param-constraint", lineno, col, "R8 requires alpha=<real>")
        return RelationParams(alpha=_parse_float(kv["alpha"], lineno, col))
    if rid == RelationId.R12:
        if "N" not in kv or "N1" not in kv:
            raise SpecParseError("param-constraint", lineno, col, "R12 requires N= and N1=")
        n, n1 = _parse_int(kv["N"], lineno, col), _parse_int(kv["N1"], lineno, col)
        if n == n1:
            raise SpecParseError("param-constraint", lineno, col, "R12 requires N != N1")
        return RelationParams(N=n, N1=n1)
    if rid == RelationId.R60:
        if "a" not in kv or "b" not in kv:
            raise SpecParseError("param-constraint", lineno, col, "R60 requires a=<kind> and b=<kind>")
        winding = _parse_int(kv["N"], lineno, col) if "N" in kv else 0
        pair = tuple(_parse_kind(kv[key], winding, lineno, col) for key in ("a", "b"))
        return RelationParams(pair=pair, N=winding if "N" in kv else None)
    return RelationParams()


def _parse_kind(text, winding, lineno, col):
    if text == "Chi":
        return obs.chi(winding)
    if text not in _KIND_NAMES:
        raise SpecParseError("unknown-key", lineno, col, f"unknown observable kind {text!r}")
    return _KIND_NAMES[text]


# ---------------------------------------------------------------------------
# canonical printing (round-trip partner of parse)

def canonical_text(doc: SpecDocument) -> str:
    """Render a document so that parse(canonical_text(doc)) == doc."""
    out = []
    s = doc.settings
    out.append(f"setting hbar {s.hbar!r}")
    out.append(f"setting hermite_nodes {s.hermite_nodes}")
    out.append(f"setting normalize {'true' if s.normalize else 'false'}")
    out.append(f"setting phi_nodes {s.phi_nodes}")
    out.append(f"setting theta_nodes {s.theta_nodes}")
    out.append(f"setting tolerance {s.tolerance!r}")
    for name, state in doc.states:
        out.append(_state_line(name, state))
    if doc.selections:
        out.append("relations " + " ".join(_selection_text(sel) for sel in doc.selections))
    return "\n".join(out) + "\n"


def _cpx(z: complex) -> str:
    return f"({z.real!r},{z.imag!r})"


def _state_line(name, state) -> str:
    if isinstance(state, CircularState):
        return f"state circular name={name} m={state.m} hbar={state.hbar!r}"
    if isinstance(state, PendulumState):
        return (
            f"state pendulum name={name} n={state.n} inertia={state.inertia!r} "
            f"omega={state.omega!r} hbar={state.hbar!r}"
        )
    if isinstance(state, RotorSuperposition):
        body = ",".join(f"{m}:{_cpx(c)}" for m, c in state.coefficients)
        return f"state rotor name={name} c={{{body}}} hbar={state.hbar!r}"
    body = ",".join(_cpx(c) for c in state.coefficients)
    return (
        f"state spherical name={name} l={state.l} c=[{body}] "
        f"hbar={state.hbar!r} inertia={state.inertia!r}"
    )


def _selection_text(sel) -> str:
    rid, params = sel
    if rid == RelationId.R8:
        return f"{rid.value}(alpha={params.alpha!r})"
    if rid == RelationId.R12:
        return f"{rid.value}(N={params.N},N1={params.N1})"
    if rid == RelationId.R60:
        a, b = params.pair
        extra = f",N={params.N}" if params.N is not None else ""
        return f"{rid.value}(a={a.name},b={b.name}{extra})"
    return rid.value


# ---------------------------------------------------------------------------
# deterministic report serialization

def _fmt(x: float) -> str:
    return "%.12g" % float(x)


def _json_scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        escaped = value.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    return _fmt(value)


def serialize_report(reports, format: str = "json") -> str:
    """Render reports deterministically: sorted keys, 12 significant digits.

    CSV columns: state_name, relation, lhs, rhs, verdict, condition31,
    deficit_abs (plus sweep_param/sweep_value when a report carries them
    in its diagnostics under those names).
    """
    reports = list(reports)
    if not reports:
        raise ValueError("serialize_report needs at least one report")
    if format == "json":
        return _to_json(reports)
    if format == "csv":
        return _to_csv(reports)
    raise ValueError(f"unknown report format {format!r}")


def _report_fields(report: RelationReport) -> dict:
    fields = {
        "condition31": report.condition31,
        "deficit_abs": report.diagnostics.get("deficit_abs", 0.0),
        "lhs": report.lhs,
        "relation": report.relation.value,
        "rhs": report.rhs,
        "state_name": report.state_name,
        "verdict": report.verdict.value,
    }
    if "sweep_value" in report.diagnostics:
        fields["sweep_value"] = report.diagnostics["sweep_value"]
        fields["sweep_param"] = report.diagnostics.get("sweep_param_name", "")
    return fields


def _to_json(reports) -> str:
    blocks = []
    for report in reports:
        fields = _report_fields(report)
        diag = {
            k: v
            for k, v in report.diagnostics.items()
            if k not in ("deficit_abs", "sweep_value", "sweep_param_name")
        }
        parts = [f'"{k}": {_json_scalar(v)}' for k, v in sorted(fields.items())]
        inner = ", ".join(f'"{k}": {_fmt(v)}' for k, v in sorted(diag.items()))
        parts.append(f'"diagnostics": {{{inner}}}')
        parts.sort(key=lambda item: item.split(":", 1)[0])
        blocks.append("  {" + ", ".join(parts) + "}")
    return "[\n" + ",\n".join(blocks) + "\n]\n"


def _to_csv(reports) -> str:
    sweeping = any("sweep_value" in r.diagnostics for r in reports)
    header = "state_name,relation,lhs,rhs,verdict,condition31,deficit_abs"
    if sweeping:
        header += ",sweep_param,sweep_value"
    lines = [header]
    for report in reports:
        fields = _report_fields(report)
        row = [
            fields["state_name"],
            fields["relation"],
            _fmt(fields["lhs"]),
            _fmt(fields["rhs"]),
            fields["verdict"],
            "true" if fields["condition31"] else "false",
            _fmt(fields["deficit_abs"]),
        ]
        if sweeping:
            row.append(fields.get("sweep_param", ""))
            row.append(_fmt(fields["sweep_value"]) if "sweep_value" in fields else "")
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"
