"""Command-line front end.

Surface files::

    # comments start with '#'
    surface 2
    face f0
    face f1
    glue f0:0 f1:0
    angle f0:0 1          # dihedral angle of the edge holding dart f0:0
    angle f0:1 1/4
    cone 0 2/3            # cone angle at vertex 0
    bangle 1 1/2          # boundary angle at vertex 1

Manifold files::

    manifold 3
    tet t0
    tet t1
    glueface t0:0 t1:0 perm 132   # images of the face's vertices, in order
    edgesum 2
    normal link t0 1 1 1 1 0 0 0  # 4 triangle counts then 3 quad counts

Angles are in units of pi.  Vertex ids are the indices printed by
``describe``.  Exit status is 0 for feasible or pass, 1 for infeasible or
fail, 2 for usage and parse errors.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import TextIO

from . import combgeo, feasibility, flow, realization, three_manifold
from .errors import (
    DelaunayAnglesError,
    DuplicateDeclaration,
    MissingAngle,
    ProblemSyntaxError,
    UnresolvedReference,
)
from .feasibility import AngleAssignment, FeasibilityReport
from .surface import TriangulatedSurface, build_surface

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_RATIONAL = re.compile(r"^-?\d+(?:/\d+)?$")
_DART = re.compile(r"^([^:\s]+):(-?\d+)$")


# -- parsing ----------------------------------------------------------------------------


@dataclass
class Token:
    text: str
    line: int
    column: int


@dataclass
class ProblemFile:
    kind: str  # "surface" or "manifold"
    face_ids: list = field(default_factory=list)
    surface: TriangulatedSurface | None = None
    angles: dict = field(default_factory=dict)  # edge -> Fraction
    cones: dict = field(default_factory=dict)  # vertex -> Fraction
    bangles: dict = field(default_factory=dict)
    tet_ids: list = field(default_factory=list)
    manifold: three_manifold.IdealTriangulation3 | None = None
    normals: dict = field(default_factory=dict)  # name -> NormalSurfaceVector
    edgesum: Fraction = Fraction(2)

    def delta(self) -> AngleAssignment:
        missing = [e for e in range(self.surface.edge_count) if e not in self.angles]
        if missing:
            raise MissingAngle(f"no angle given for edges {missing}")
        return AngleAssignment(self.surface, self.angles)

    def face_name(self, f: int) -> str:
        return self.face_ids[f]


def _tokens(line: str, number: int) -> list[Token]:
    text = line.split("#", 1)[0]
    return [Token(m.group(), number, m.start() + 1) for m in re.finditer(r"\S+", text)]


def parse_rational(tok: Token) -> Fraction:
    if not _RATIONAL.match(tok.text):
        raise ProblemSyntaxError(f"expected a rational p/q, got {tok.text!r}", tok.line, tok.column)
    try:
        return Fraction(tok.text)
    except ZeroDivisionError:
        raise ProblemSyntaxError("zero denominator", tok.line, tok.column) from None


def _int(tok: Token) -> int:
    if not re.match(r"^\d+$", tok.text):
        raise ProblemSyntaxError(f"expected a non-negative integer, got {tok.text!r}", tok.line, tok.column)
    return int(tok.text)


def _arity(toks: list[Token], n: int) -> None:
    if len(toks) != n:
        t = toks[min(len(toks), n) - 1] if len(toks) >= n else toks[-1]
        raise ProblemSyntaxError(f"{toks[0].text!r} takes {n - 1} arguments, got {len(toks) - 1}", t.line, t.column)


def _split_ref(tok: Token) -> tuple[str, int]:
    m = _DART.match(tok.text)
    if not m:
        raise ProblemSyntaxError(f"expected <id>:<index>, got {tok.text!r}", tok.line, tok.column)
    return m.group(1), int(m.group(2))


def parse(source) -> ProblemFile:
    """Parse a path, an open text stream or a string holding the file itself."""
    if isinstance(source, Path) or (isinstance(source, str) and source and "\n" not in source and Path(source).is_file()):
        text = Path(source).read_text(encoding="utf-8")
    elif hasattr(source, "read"):
        text = source.read()
    else:
        text = str(source)
    lines = [(i + 1, _tokens(raw, i + 1)) for i, raw in enumerate(text.splitlines())]
    lines = [(n, t) for n, t in lines if t]
    if not lines:
        raise ProblemSyntaxError("missing header: expected 'surface 2' or 'manifold 3'", 1, 1)
    head = lines[0][1]
    if [t.text for t in head] == ["surface", "2"]:
        return _parse_surface(lines[1:])
    if [t.text for t in head] == ["manifold", "3"]:
        return _parse_manifold(lines[1:])
    raise ProblemSyntaxError("missing header: expected 'surface 2' or 'manifold 3'", head[0].line, head[0].column)


def _parse_surface(lines) -> ProblemFile:
    pf = ProblemFile("surface")
    index: dict[str, int] = {}
    glues, refs = [], []
    for _, toks in lines:
        kw = toks[0].text
        if kw == "face":
            _arity(toks, 2)
            name = toks[1].text
            if name in index:
                raise DuplicateDeclaration(f"face {name!r} declared twice", toks[1].line, toks[1].column)
            index[name] = len(pf.face_ids)
            pf.face_ids.append(name)
        elif kw == "glue":
            _arity(toks, 3)
            glues.append((toks[1], toks[2]))
        elif kw in ("angle", "cone", "bangle"):
            _arity(toks, 3)
            refs.append((kw, toks[1], toks[2], parse_rational(toks[2])))
        else:
            raise ProblemSyntaxError(f"unknown keyword {kw!r}", toks[0].line, toks[0].column)

    def dart(tok):
        name, slot = _split_ref(tok)
        if name not in index:
            raise UnresolvedReference(f"unknown face {name!r}", tok.line, tok.column)
        if not 0 <= slot < 3:
            raise UnresolvedReference(f"slot {slot} out of range 0..2", tok.line, tok.column)
        return index[name], slot

    seen = {}
    pairs = []
    for a, b in glues:
        da, db = dart(a), dart(b)
        for d, tok in ((da, a), (db, b)):
            if d in seen:
                raise DuplicateDeclaration(f"dart {tok.text} glued twice", tok.line, tok.column)
            seen[d] = tok
        if da == db:
            raise ProblemSyntaxError(f"dart {a.text} glued to itself", b.line, b.column)
        pairs.append((da, db))
    try:
        pf.surface = build_surface(len(pf.face_ids), pairs)
    except DelaunayAnglesError as exc:
        first = glues[0][0] if glues else None
        raise ProblemSyntaxError(str(exc), first.line if first else None) from exc
    T = pf.surface
    for kw, ref, val_tok, value in refs:
        if kw == "angle":
            key = T.dart_edge[dart(ref)]
            table = pf.angles
        else:
            v = _int(ref)
            if v >= T.vertex_count:
                raise UnresolvedReference(f"vertex {v} out of range 0..{T.vertex_count - 1}", ref.line, ref.column)
            key = v
            table = pf.cones if kw == "cone" else pf.bangles
            if kw == "bangle" and not T.boundary_vertex[v]:
                raise UnresolvedReference(f"vertex {v} is not on the boundary", ref.line, ref.column)
        if key in table and table[key] != value:
            raise DuplicateDeclaration(f"conflicting {kw} for the same {'edge' if kw == 'angle' else 'vertex'}", val_tok.line, val_tok.column)
        table[key] = value
    return pf


def _parse_manifold(lines) -> ProblemFile:
    pf = ProblemFile("manifold")
    index: dict[str, int] = {}
    glues, normals = [], []
    for _, toks in lines:
        kw = toks[0].text
        if kw == "tet":
            _arity(toks, 2)
            if toks[1].text in index:
                raise DuplicateDeclaration(f"tetrahedron {toks[1].text!r} declared twice", toks[1].line, toks[1].column)
            index[toks[1].text] = len(pf.tet_ids)
            pf.tet_ids.append(toks[1].text)
        elif kw == "glueface":
            _arity(toks, 5)
            if toks[3].text != "perm":
                raise ProblemSyntaxError("expected 'perm'", toks[3].line, toks[3].column)
            glues.append(toks)
        elif kw == "edgesum":
            _arity(toks, 2)
            pf.edgesum = parse_rational(toks[1])
        elif kw == "normal":
            _arity(toks, 10)
            normals.append(toks)
        else:
            raise ProblemSyntaxError(f"unknown keyword {kw!r}", toks[0].line, toks[0].column)

    def face(tok):
        name, f = _split_ref(tok)
        if name not in index:
            raise UnresolvedReference(f"unknown tetrahedron {name!r}", tok.line, tok.column)
        if not 0 <= f < 4:
            raise UnresolvedReference(f"face {f} out of range 0..3", tok.line, tok.column)
        return index[name], f

    entries = []
    for toks in glues:
        t, f = face(toks[1])
        u, g = face(toks[2])
        word = toks[4]
        if not re.match(r"^[0-3]{3}$", word.text) or len(set(word.text)) != 3 or str(g) in word.text:
            raise ProblemSyntaxError(f"perm {word.text!r} must list the 3 vertices of face {g}", word.line, word.column)
        perm = [0] * 4
        for src, dst in zip([x for x in range(4) if x != f], word.text):
            perm[src] = int(dst)
        perm[f] = g
        entries.append((t, f, u, g, tuple(perm)))
    try:
        pf.manifold = three_manifold.build_ideal_triangulation(len(pf.tet_ids), entries)
    except DelaunayAnglesError as exc:
        tok = glues[0][0] if glues else None
        raise ProblemSyntaxError(str(exc), tok.line if tok else None) from exc
    rows: dict[str, dict] = {}
    for toks in normals:
        name, tet = toks[1].text, toks[2]
        if tet.text not in index:
            raise UnresolvedReference(f"unknown tetrahedron {tet.text!r}", tet.line, tet.column)
        counts = [_int(t) for t in toks[3:]]
        table = rows.setdefault(name, {})
        if index[tet.text] in table:
            raise DuplicateDeclaration(f"surface {name!r} gives tetrahedron {tet.text} twice", tet.line, tet.column)
        table[index[tet.text]] = counts
    for name, table in rows.items():
        n = len(pf.tet_ids)
        tris = [table.get(t, [0] * 7)[:4] for t in range(n)]
        quads = [table.get(t, [0] * 7)[4:] for t in range(n)]
        pf.normals[name] = three_manifold.NormalSurfaceVector.make(pf.manifold, tris, quads)
    return pf


# -- emitting -----------------------------------------------------------------------------


def fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def fmt_float(x: float) -> str:
    return f"{x:.12g}"


def _surface_file(T: TriangulatedSurface, names=None) -> str:
    names = names or [f"f{f}" for f in T.faces]
    out = ["surface 2"] + [f"face {n}" for n in names]
    for (f, i), (g, j) in T.gluings():
        out.append(f"glue {names[f]}:{i} {names[g]}:{j}")
    return "\n".join(out) + "\n"


def _report_dict(pf: ProblemFile, rep: FeasibilityReport) -> dict:
    d: dict = {"verdict": rep.verdict, "method": rep.method}
    if rep.solution is not None:
        d["face_angles"] = {
            f"{pf.face_name(f)}:{c}": fmt_rational(rep.solution.angles[(f, c)]) for f in pf.surface.faces for c in range(3)
        }
    if rep.lp_epsilon is not None:
        d["epsilon"] = fmt_rational(rep.lp_epsilon)
    if rep.violation is not None:
        v = rep.violation
        d["violation"] = {
            "kind": v.kind,
            "faces": sorted(pf.face_name(f) for f in v.faces),
            "edge": v.edge,
            "excess": None if v.excess is None else fmt_rational(v.excess),
        }
    cut = rep.extra.get("cut")
    if cut is not None:
        d["cut"] = {
            "F0": sorted(pf.face_name(f) for f in cut.F0),
            "F2": sorted(pf.face_name(f) for f in cut.F2),
            "F3": sorted(pf.face_name(f) for f in cut.F3),
            "capacity": fmt_rational(cut.capacity),
        }
    if "flow" in rep.extra:
        d["flow_value"] = fmt_rational(rep.extra["flow"].value)
    if rep.extra.get("newton_steps") is not None:
        d["newton_steps"] = rep.extra["newton_steps"]
    return d


def load_report(text: str) -> dict:
    """Read emitted JSON back, turning every ``p/q`` string into a Fraction."""

    def conv(x):
        if isinstance(x, dict):
            return {k: conv(v) for k, v in x.items()}
        if isinstance(x, list):
            return [conv(v) for v in x]
        if isinstance(x, str) and re.match(r"^-?\d+/\d+$", x):
            return Fraction(x)
        return x

    return conv(json.loads(text))


def dump_report(report: dict) -> str:
    """Inverse of :func:`load_report`."""

    def conv(x):
        if isinstance(x, Fraction):
            return fmt_rational(x)
        if isinstance(x, dict):
            return {k: conv(v) for k, v in x.items()}
        if isinstance(x, list):
            return [conv(v) for v in x]
        return x

    return json.dumps(conv(report), indent=2, sort_keys=True)


def _text(d: dict, indent: str = "") -> str:
    out = []
    for k, v in d.items():
        if isinstance(v, dict):
            out.append(f"{indent}{k}:")
            out.append(_text(v, indent + "  "))
        elif isinstance(v, list):
            items = [",".join(map(str, x)) if isinstance(x, list) else str(x) for x in v]
            out.append(f"{indent}{k}: " + (" ".join(items) if items else "(none)"))
        else:
            out.append(f"{indent}{k}: {v}")
    return "\n".join(x for x in out if x)


# -- commands -----------------------------------------------------------------------------


def _need(pf: ProblemFile, kind: str) -> None:
    if pf.kind != kind:
        raise UsageError(f"this command needs a {kind} file")


class UsageError(Exception):
    pass


def _parse_epsilon(text: str):
    if text in ("auto", "lcm"):
        return text
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--epsilon expects auto, lcm or p/q, got {text!r}") from None


def _decide(pf: ProblemFile, engine: str, args) -> FeasibilityReport:
    T = pf.surface
    delta = pf.delta()
    if args.relaxed:
        return feasibility.decide_relaxed_boundary(T, delta)
    if engine == "flow":
        return flow.decide_flow(T, delta, strict=True, epsilon=_parse_epsilon(args.epsilon))
    if engine == "lp":
        return feasibility.decide_lp(T, delta)
    if engine == "oracle":
        return feasibility.check_conditions_bruteforce(T, delta)
    raise UsageError(f"unknown engine {engine!r}")


def cmd_check(pf: ProblemFile, args) -> tuple[int, dict]:
    _need(pf, "surface")
    T = pf.surface
    if not pf.angles:
        if not pf.cones and not pf.bangles:
            raise UsageError("nothing to check: give angle, cone or bangle lines")
        sums = {**pf.cones, **pf.bangles}
        rep = feasibility.cone_angle_problem(T, sums, delaunay=True)
        d = _report_dict(pf, rep)
        d["problem"] = "cone angles"
        return (EXIT_OK if rep.feasible else EXIT_FAIL), d
    engine = args.engine or "flow"
    rep = _decide(pf, engine, args)
    d = _report_dict(pf, rep)
    ok = rep.feasible
    delta = pf.delta()
    if pf.cones:
        bad = {v: fmt_rational(delta.cone_angle(v)) for v, c in pf.cones.items() if delta.cone_angle(v) != c}
        d["cone_mismatch"] = bad
        ok = ok and not bad
    if pf.bangles:
        res = feasibility.andreev_check(T, delta, pf.bangles)
        d["andreev"] = {"passed": res.passed, "clause": res.clause}
        ok = ok and res.passed
    return (EXIT_OK if ok else EXIT_FAIL), d


def cmd_check_oracle(pf, args):
    args.engine = "oracle"
    return cmd_check(pf, args)


def cmd_lp(pf, args):
    args.engine = "lp"
    return cmd_check(pf, args)


def cmd_flow(pf: ProblemFile, args):
    _need(pf, "surface")
    rep = flow.decide_flow(pf.surface, pf.delta(), strict=not args.non_strict, epsilon=_parse_epsilon(args.epsilon))
    return (EXIT_OK if rep.feasible else EXIT_FAIL), _report_dict(pf, rep)


def _solve_for_geometry(pf: ProblemFile, args):
    rep = _decide(pf, args.engine or "lp", args)
    if not rep.feasible:
        return rep, None
    return rep, rep.solution


def cmd_realize(pf: ProblemFile, args):
    _need(pf, "surface")
    rep, sol = _solve_for_geometry(pf, args)
    d = _report_dict(pf, rep)
    if sol is None:
        return EXIT_FAIL, d
    dev = realization.develop(pf.surface, sol, root=args.root)
    d["positions"] = {
        pf.face_name(f): [[fmt_float(z.real), fmt_float(z.imag)] for z in dev.positions[f]] for f in sorted(dev.positions)
    }
    d["vertex_spread"] = fmt_float(dev.vertex_spread())
    d["max_mismatch"] = fmt_float(dev.max_mismatch())
    return EXIT_OK, d


def cmd_shear(pf: ProblemFile, args):
    _need(pf, "surface")
    rep, sol = _solve_for_geometry(pf, args)
    d = _report_dict(pf, rep)
    if sol is None:
        return EXIT_FAIL, d
    d["shear"] = {str(e): fmt_float(x) for e, x in sorted(realization.shear_coordinates(pf.surface, sol).items())}
    return EXIT_OK, d


def cmd_stellate(pf: ProblemFile, args):
    _need(pf, "surface")
    s = combgeo.stellate(pf.surface)
    S = s.surface
    d = {
        "vertices": S.vertex_count,
        "faces": S.face_count,
        "old_vertices": s.old_vertices,
        "new_vertices": s.new_vertices,
        "surface": _surface_file(S),
    }
    code = EXIT_OK
    if args.realizability:
        rep = combgeo.positively_curved_realizability(S)
        d["positively_curved"] = rep.verdict
        if rep.lp_epsilon is not None:
            d["epsilon"] = fmt_rational(rep.lp_epsilon)
        code = EXIT_OK if rep.feasible else EXIT_FAIL
    return code, d


def _structure_dict(pf: ProblemFile, res) -> dict:
    d: dict = {"status": res.status}
    if res.structure is not None:
        d["angles"] = {
            f"{pf.tet_ids[t]}:{p}": fmt_rational(res.structure.angles[(t, p)])
            for t in range(pf.manifold.tet_count)
            for p in range(3)
        }
    if res.epsilon is not None:
        d["epsilon"] = fmt_rational(res.epsilon)
    if res.certificate is not None and res.status == "none":
        d["certificate"] = _certificate_dict(pf, res.certificate)
    return d


def _certificate_dict(pf, cert) -> dict:
    return {
        "v_tet": {pf.tet_ids[t]: fmt_rational(x) for t, x in sorted(cert.v_tet.items())},
        "v_edge": {str(e): fmt_rational(x) for e, x in sorted(cert.v_edge.items())},
        "objective": fmt_rational(cert.objective),
    }


def cmd_m3_check(pf: ProblemFile, args):
    _need(pf, "manifold")
    M = pf.manifold
    res = three_manifold.linear_hyperbolic_lp(M, strict=not args.weak, target=pf.edgesum)
    d = {"valences": list(M.valences)}
    d.update(_structure_dict(pf, res))
    want = "weak" if args.weak else "structure"
    return (EXIT_OK if res.status == want else EXIT_FAIL), d


def cmd_m3_normal(pf: ProblemFile, args):
    _need(pf, "manifold")
    M = pf.manifold
    names = sorted(pf.normals)
    if args.enumerate:
        found = list(three_manifold.enumerate_normal_vectors(M, max_count=args.enumerate))
        for k, S in enumerate(found):
            pf.normals[f"enum{k}"] = S
        names += [f"enum{k}" for k in range(len(found))]
    surfaces = [pf.normals[n] for n in names]
    report = three_manifold.hext_check(M, surfaces, target=pf.edgesum)
    d: dict = {"consistent": report.consistent, "lp_strict": report.lp_strict.status, "lp_weak": report.lp_weak.status}
    d["surfaces"] = {}
    for name, v in zip(names, report.verdicts):
        cert = three_manifold.certificate_from_normal_surface(v.surface, target=pf.edgesum)
        d["surfaces"][name] = {
            "chi": fmt_rational(v.chi),
            "obstructs_weak": v.obstructs_weak,
            "obstructs_strict": v.obstructs_strict,
            "quad_free": v.boundary_parallel,
            "certificate": _certificate_dict(pf, cert),
        }
    return (EXIT_OK if report.consistent else EXIT_FAIL), d


def cmd_describe(pf: ProblemFile, args):
    if pf.kind == "manifold":
        M = pf.manifold
        d = {
            "tetrahedra": M.tet_count,
            "edges": {
                str(e): " ".join(f"{pf.tet_ids[t]}:{a}{b}" for t, (a, b) in slots) for e, slots in enumerate(M.edge_slots)
            },
            "valences": list(M.valences),
            "orientable": M.is_orientable(),
            "cusp_euler_characteristics": M.cusp_types(),
        }
        return EXIT_OK, d
    T = pf.surface
    d = {
        "faces": T.face_count,
        "edges": T.edge_count,
        "vertices": T.vertex_count,
        "euler_characteristic": T.euler_characteristic(),
        "vertex": {
            str(v): ("boundary " if T.boundary_vertex[v] else "interior ")
            + " ".join(f"{pf.face_name(f)}:{c}" for f, c in cs)
            for v, cs in enumerate(T.vertex_corners)
        },
        "edge": {
            str(e): " ".join(f"{pf.face_name(f)}:{i}" for f, i in darts) for e, darts in enumerate(T.edges)
        },
    }
    return EXIT_OK, d


COMMANDS = {
    "check": cmd_check,
    "check-oracle": cmd_check_oracle,
    "flow": cmd_flow,
    "lp": cmd_lp,
    "realize": cmd_realize,
    "shear": cmd_shear,
    "stellate": cmd_stellate,
    "m3-check": cmd_m3_check,
    "m3-normal": cmd_m3_normal,
    "describe": cmd_describe,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="delaunay-angles", description="Decide and realize dihedral angle data.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("files", nargs="+", type=Path)
    p.add_argument("--emit", choices=("text", "json"), default="text")
    p.add_argument("--engine", choices=("flow", "lp", "oracle"))
    p.add_argument("--epsilon", default="auto", help="auto, lcm or a rational p/q")
    p.add_argument("--relaxed", action="store_true", help="allow boundary angles below pi")
    p.add_argument("--non-strict", action="store_true", help="flow: allow zero angles")
    p.add_argument("--weak", action="store_true", help="m3-check: accept weak structures")
    p.add_argument("--realizability", action="store_true", help="stellate: test positive curvature")
    p.add_argument("--enumerate", type=int, default=0, metavar="N", help="m3-normal: add vectors with counts <= N")
    p.add_argument("--root", type=int, default=0, help="realize: root face")
    p.add_argument("--jobs", type=int, default=1)
    return p


def run_one(command: str, path, args) -> tuple[int, str]:
    """Run one command on one file and return (exit status, rendered output)."""
    try:
        pf = parse(path)
        code, d = COMMANDS[command](pf, args)
    except OSError as exc:
        d = {"error": type(exc).__name__, "message": str(exc)}
        code = EXIT_USAGE
    except (ProblemSyntaxError, UsageError, MissingAngle) as exc:
        d = {"error": type(exc).__name__, "message": str(exc)}
        code = EXIT_USAGE
    except DelaunayAnglesError as exc:
        d = {"error": type(exc).__name__, "message": str(exc)}
        code = EXIT_USAGE
    d = {"file": str(path), "command": command, "exit": code, **d}
    if args.emit == "json":
        return code, json.dumps(d, indent=2, sort_keys=True)
    return code, _text(d)


def _run_packed(packed):
    command, path, args = packed
    return run_one(command, path, args)


def main(argv=None, stdout: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    jobs = [(args.command, path, args) for path in args.files]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_packed, jobs))
    else:
        results = [_run_packed(j) for j in jobs]
    for _, out in results:
        print(out, file=stdout)
    return max(code for code, _ in results)


if __name__ == "__main__":
    sys.exit(main())
