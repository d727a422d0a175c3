"""Problem files, count reports and SVG pictures of counted curves."""
from __future__ import annotations

import json
import math
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from .algebra import RefinedPolynomial, rational_to_json
from .count import CountResult, u_expansion
from .incidence import ParametrizedTropicalCurve, PointConfiguration
from .lattice import Degree, DescendantProfile, ProblemError, validate_problem
from .multiplicity import Normalization


class ParseError(ValueError):
    """The problem file is not well-formed."""


_RATIONAL = re.compile(r"\s*-?\d+(\s*/\s*-?\d+)?\s*")


def parse_rational(value: Any, where: str) -> Fraction:
    """An int or a "num/den" string; floats are refused."""
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.fullmatch(value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError as exc:
            raise ParseError(f"{where}: zero denominator in {value!r}") from exc
    raise ParseError(f"{where}: expected an integer or a 'num/den' string, got {value!r}")


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: expected an integer, got {value!r}")
    return value


def _pair(value: Any, where: str) -> list:
    if not isinstance(value, list) or len(value) != 2:
        raise ParseError(f"{where}: expected a pair, got {value!r}")
    return value


@dataclass(frozen=True)
class ProblemFile:
    delta: tuple[tuple[int, int], ...]
    k: tuple[int, ...]
    points: tuple[tuple[Fraction, Fraction], ...] | None = None
    seed: int | None = None
    convention: str | None = None
    truncation: int | None = None

    def validated(self) -> tuple[Degree, DescendantProfile, PointConfiguration | None]:
        """Check the data; raises ProblemError."""
        degree, profile = validate_problem(self.delta, self.k)
        if self.convention is not None and self.convention not in {c.value for c in Normalization}:
            raise ProblemError("convention", f"unknown convention {self.convention!r}")
        if self.truncation is not None and self.truncation < 0:
            raise ProblemError("truncation", "truncation order must be non-negative")
        config = None
        if self.points is not None:
            if len(self.points) != profile.n:
                raise ProblemError("points", f"{len(self.points)} points given for {profile.n} marked ends")
            try:
                config = PointConfiguration(self.points, self.seed)
            except ValueError as exc:
                raise ProblemError("points", str(exc)) from exc
        return degree, profile, config

    def to_json(self) -> dict:
        out: dict[str, Any] = {"delta": [list(v) for v in self.delta], "k": list(self.k)}
        if self.points is not None:
            out["points"] = [[rational_to_json(x), rational_to_json(y)] for x, y in self.points]
        for key in ("seed", "convention", "truncation"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        return out


def parse_problem(obj: Any) -> ProblemFile:
    if not isinstance(obj, dict):
        raise ParseError("a problem file holds a JSON object")
    unknown = set(obj) - {"delta", "k", "points", "seed", "convention", "truncation"}
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}")
    if "delta" not in obj or "k" not in obj:
        raise ParseError("'delta' and 'k' are required")
    if not isinstance(obj["delta"], list) or not isinstance(obj["k"], list):
        raise ParseError("'delta' and 'k' must be lists")
    delta = tuple(
        tuple(_int(c, f"delta[{i}]") for c in _pair(v, f"delta[{i}]")) for i, v in enumerate(obj["delta"])
    )
    k = tuple(_int(x, f"k[{i}]") for i, x in enumerate(obj["k"]))
    points = None
    if obj.get("points") is not None:
        if not isinstance(obj["points"], list):
            raise ParseError("'points' must be a list")
        points = tuple(
            tuple(parse_rational(c, f"points[{i}]") for c in _pair(p, f"points[{i}]"))
            for i, p in enumerate(obj["points"])
        )
    seed = _int(obj["seed"], "seed") if obj.get("seed") is not None else None
    convention = obj.get("convention")
    if convention is not None and not isinstance(convention, str):
        raise ParseError("'convention' must be a string")
    truncation = _int(obj["truncation"], "truncation") if obj.get("truncation") is not None else None
    return ProblemFile(delta, k, points, seed, convention, truncation)  # type: ignore[arg-type]


def load_problem(path: str | Path) -> ProblemFile:
    text = Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    return parse_problem(obj)


# -- reports -------------------------------------------------------------------


def default_truncation(result: CountResult) -> int:
    return result.trivalent + 6


def count_report(result: CountResult, truncation: int | None = None) -> dict:
    """Machine-readable report; ``CountResult.from_json`` reads it back."""
    order = default_truncation(result) if truncation is None else truncation
    report = result.to_json()
    report["attempts"] = result.attempts
    if order >= result.trivalent:
        _, ng = u_expansion(result, order)
        report["truncation"] = order
        report["N_g"] = {str(g): rational_to_json(c) for g, c in ng.items()}
    else:
        report["truncation"] = order
        report["N_g"] = {}
    return report


def format_count(report: dict) -> str:
    lines = [
        f"count: {report['text']}",
        f"convention: {report['convention']}" + (" (labeled ends)" if report.get("labeled") else ""),
        "seed: " + ("none (points given)" if report["seed"] is None else str(report["seed"])),
        "points: " + ", ".join(f"({x}, {y})" for x, y in report["points"]),
        f"unpointed trivalent vertices: {report['trivalent']}",
        f"curves: {len(report['curves'])}",
    ]
    for i, c in enumerate(report["curves"], 1):
        poly = RefinedPolynomial.from_json(c["multiplicity"])
        nv = len(c["curve"]["type"]["markers"])
        lines.append(f"  curve {i}: {nv} vertices, multiplicity {poly.to_text()}")
    if report["N_g"]:
        lines.append(f"u-expansion through u^{report['truncation']}:")
        for g, c in report["N_g"].items():
            lines.append(f"  N_{g} = {c}")
    return "\n".join(lines)


# -- pictures ------------------------------------------------------------------

_SIZE = 480.0
_MARGIN = 30.0


def _num(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(curve: ParametrizedTropicalCurve, config: PointConfiguration | None = None, title: str = "") -> str:
    """A static SVG: bounded edges as segments, ends clipped at a padded
    bounding box, marked points as labeled crosses, valencies at vertices."""
    t = curve.type
    pos = [(float(x), float(y)) for x, y in curve.positions]
    pts = [(float(x), float(y)) for x, y in config.points] if config is not None else []
    xs = [p[0] for p in pos + pts]
    ys = [p[1] for p in pos + pts]
    pad = max((math.hypot(*t.end_vector(lab)) for _, lab in t.ends), default=1.0)
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    pad *= max(span / 4, 1e-9)
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(ys) - pad, max(ys) + pad
    scale = (_SIZE - 2 * _MARGIN) / max(x1 - x0, y1 - y0)

    def sx(x: float) -> float:
        return _MARGIN + (x - x0) * scale

    def sy(y: float) -> float:
        return _SIZE - _MARGIN - (y - y0) * scale

    def clip(p: tuple[float, float], d) -> tuple[float, float]:
        ts = []
        for c, dc, lo, hi in ((p[0], d[0], x0, x1), (p[1], d[1], y0, y1)):
            if dc > 0:
                ts.append((hi - c) / dc)
            elif dc < 0:
                ts.append((lo - c) / dc)
        s = min(ts)
        return (p[0] + s * d[0], p[1] + s * d[1])

    svg = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "width": _num(_SIZE),
            "height": _num(_SIZE),
            "viewBox": f"0 0 {_num(_SIZE)} {_num(_SIZE)}",
        },
    )
    if title:
        ET.SubElement(svg, "title").text = title
    ET.SubElement(
        svg,
        "rect",
        {"x": _num(sx(x0)), "y": _num(sy(y1)), "width": _num((x1 - x0) * scale), "height": _num((y1 - y0) * scale),
         "fill": "none", "stroke": "#bbbbbb"},
    )
    lines = ET.SubElement(svg, "g", {"stroke": "black", "stroke-width": "2", "fill": "none"})
    for (a, b), w in zip(t.edges, t.edge_weights):
        attrs = {"x1": _num(sx(pos[a][0])), "y1": _num(sy(pos[a][1])), "x2": _num(sx(pos[b][0])), "y2": _num(sy(pos[b][1]))}
        if math.gcd(abs(w.x), abs(w.y)) > 1:
            attrs["stroke-width"] = "3.5"
        ET.SubElement(lines, "line", attrs)
    for v, lab in t.ends:
        d = t.end_vector(lab)
        q = clip(pos[v], (float(d.x), float(d.y)))
        ET.SubElement(
            lines,
            "line",
            {"x1": _num(sx(pos[v][0])), "y1": _num(sy(pos[v][1])), "x2": _num(sx(q[0])), "y2": _num(sy(q[1])),
             "stroke-dasharray": "6 3"},
        )
    crosses = ET.SubElement(svg, "g", {"stroke": "#c0392b", "stroke-width": "2"})
    labels = ET.SubElement(svg, "g", {"font-family": "sans-serif", "font-size": "12"})
    for i, (px, py) in enumerate(pts, 1):
        cx, cy = sx(px), sy(py)
        ET.SubElement(crosses, "line", {"x1": _num(cx - 5), "y1": _num(cy - 5), "x2": _num(cx + 5), "y2": _num(cy + 5)})
        ET.SubElement(crosses, "line", {"x1": _num(cx - 5), "y1": _num(cy + 5), "x2": _num(cx + 5), "y2": _num(cy - 5)})
        ET.SubElement(labels, "text", {"x": _num(cx + 7), "y": _num(cy - 7), "fill": "#c0392b"}).text = f"p{i}"
    for v in range(t.num_vertices):
        ET.SubElement(
            labels, "text", {"x": _num(sx(pos[v][0]) + 6), "y": _num(sy(pos[v][1]) + 14), "fill": "#2c3e50"}
        ).text = str(t.valency(v))
    ET.indent(svg)
    return ET.tostring(svg, encoding="unicode", xml_declaration=False) + "\n"


def write_svgs(result: CountResult, directory: str | Path, stem: str = "curve") -> list[Path]:
    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for i, (curve, mult) in enumerate(result.curves, 1):
        path = out_dir / f"{stem}-{i}.svg"
        path.write_text(render_svg(curve, result.points, f"curve {i}: {mult.to_text()}"))
        written.append(path)
    return written
