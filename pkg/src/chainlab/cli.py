"""Command-line front end and the complex document format.

Document format (``#`` starts a comment, indentation is ignored)::

    ring Z
    complex X
    rank -1 1
    rank 0 1
    diff -1 [[2]]

    complex Y
    rank 0 1

    map f: X -> Y
    component 0 [[1]]

``ring`` takes ``Z``, ``Q`` or ``F<p>`` and may appear once, before any
block; otherwise the ring comes from ``--ring`` or ``$CHAINLAB_RING``
(default ``Z``). ``complex`` takes an optional name (default ``X``, ``Y``,
``Z``, ``W``, then ``C5``, ...). ``diff n M`` gives ``d^n`` as a row-major
matrix of shape ``rank(n+1) x rank(n)``; ``component n M`` gives a map in
degree ``n``. Anything unstated is zero.

Modules on the command line are lists of orders: ``4`` is ``Z/4``,
``0,2`` is ``Z + Z/2`` and ``0,0`` is ``R^2``.

Exit status: 0 on success, 1 when a check fails (including a negative
answer from ``quasi-iso``, ``null-homotopy``, ``octahedron`` and
``verify-axioms``), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import NamedTuple

from . import axioms, complex as cx, cone as cn, derived, homotopy, tstruct
from .exactla import FgModule, module_map_analysis
from .matrix import ExactMatrix, MatrixSyntaxError, parse_matrix_text
from .rings import CoefficientRing, ZZ, ring_from_tag

ENV_RING = "CHAINLAB_RING"

# library operation -> the subcommand that exposes it
OPERATION_COMMANDS = {
    "smith_normal_form": "cohomology",
    "cokernel_presentation": "cohomology",
    "validate": "cohomology",
    "cohomology": "cohomology",
    "kernel_basis": "truncate",
    "solve_linear": "null-homotopy",
    "module_map_analysis": "quasi-iso",
    "induced_map": "quasi-iso",
    "is_quasi_iso": "quasi-iso",
    "find_homotopy_inverse": "quasi-iso",
    "shift": "shift",
    "biproduct": "tensor",
    "tensor": "tensor",
    "cone": "cone",
    "cofiber_les": "cone",
    "rotate": "cone",
    "iterated_cofiber": "cone",
    "certify_exact": "cone",
    "cylinder": "cylinder",
    "ses_compare": "cylinder",
    "find_null_homotopy": "null-homotopy",
    "hom_in_K": "hom-k",
    "hom_derived": "hom-k",
    "free_resolution": "resolve",
    "derived_tensor": "derived-tensor",
    "tor": "tor",
    "ext": "ext",
    "truncate": "truncate",
    "truncation_triangle": "truncate",
    "standard_t_verdict": "t-verdict",
    "heart_H0": "t-verdict",
    "torsion_decompose": "tilt-verdict",
    "tilted_t_verdict": "tilt-verdict",
    "check_tr4": "octahedron",
    "check_tr1": "verify-axioms",
    "check_tr2": "verify-axioms",
    "check_tr3": "verify-axioms",
    "check_cohomological_functor": "verify-axioms",
    "random_complex": "generate",
    "parse_document": "cohomology",
}


class UsageError(Exception):
    pass


class DocumentError(ValueError):
    """A parse or validation error, positioned at ``line:column`` (1-based)."""

    def __init__(self, msg, line=None, column=None, degree=None):
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(where + msg)
        self.line, self.column, self.degree = line, column, degree


class Document(NamedTuple):
    ring: CoefficientRing
    complexes: dict
    maps: dict


_DEFAULT_NAMES = ("X", "Y", "Z", "W")


def _int(tok, line, col):
    try:
        return int(tok)
    except ValueError:
        raise DocumentError(f"expected an integer, got {tok!r}", line, col) from None


def parse_document(text: str, ring: CoefficientRing | None = None) -> Document:
    """Parse a document into complexes and maps; every complex is validated."""
    doc_ring = None
    blocks = []          # [kind, name, header-info, entries, line]
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col0 = len(line) - len(line.lstrip()) + 1
        word, _, rest = stripped.partition(" ")
        rest = rest.strip()
        if word == "ring":
            if blocks or doc_ring is not None:
                raise DocumentError("'ring' must come first and only once", ln, col0)
            try:
                doc_ring = ring_from_tag(rest)
            except ValueError as e:
                raise DocumentError(str(e), ln, col0 + 5) from None
        elif word == "complex":
            name = rest or (_DEFAULT_NAMES[len(blocks)] if len(blocks) < 4 else f"C{len(blocks) + 1}")
            blocks.append(["complex", name, None, [], ln])
        elif word == "map":
            head, arrow, tgt = rest.partition("->")
            name, colon, src = head.partition(":")
            if not (arrow and colon and name.strip() and src.strip() and tgt.strip()):
                raise DocumentError("expected 'map NAME: SOURCE -> TARGET'", ln, col0)
            blocks.append(["map", name.strip(), (src.strip(), tgt.strip()), [], ln])
        elif word in ("rank", "diff", "component"):
            if not blocks:
                raise DocumentError(f"'{word}' outside a complex or map block", ln, col0)
            kind = blocks[-1][0]
            if (word == "component") != (kind == "map"):
                raise DocumentError(f"'{word}' not allowed in a {kind} block", ln, col0)
            deg_tok, _, payload = rest.partition(" ")
            deg = _int(deg_tok, ln, col0 + len(word) + 1)
            pcol = col0 + len(word) + 1 + len(deg_tok) + 1
            pcol += len(payload) - len(payload.lstrip())
            blocks[-1][3].append((word, deg, payload.strip(), ln, pcol))
        else:
            raise DocumentError(f"unknown keyword {word!r}", ln, col0)
    R = doc_ring or ring or ZZ
    complexes, maps = {}, {}
    for kind, name, head, entries, ln in blocks:
        if name in complexes or name in maps:
            raise DocumentError(f"duplicate name {name!r}", ln, 1)
        if kind == "complex":
            complexes[name] = _build_complex(R, name, entries)
        else:
            src, tgt = head
            for n in (src, tgt):
                if n not in complexes:
                    raise DocumentError(f"unknown complex {n!r}", ln, 1)
            maps[name] = _build_map(R, complexes[src], complexes[tgt], entries, ln)
    return Document(R, complexes, maps)


def _matrix(R, payload, rows, cols, ln, col):
    try:
        m = parse_matrix_text(payload, R, rows, cols)
    except MatrixSyntaxError as e:
        raise DocumentError(str(e), ln, col + e.offset) from None
    except ValueError as e:
        raise DocumentError(str(e), ln, col) from None
    if m.shape != (rows, cols):
        if rows * cols == 0 and m.rows * m.cols == 0:
            return ExactMatrix(R, rows, cols)
        raise DocumentError(f"matrix has shape {m.rows}x{m.cols}, expected {rows}x{cols}",
                            ln, col)
    return m


def _build_complex(R, name, entries) -> cx.ChainComplex:
    ranks = {}
    for word, deg, payload, ln, col in entries:
        if word == "rank":
            if deg in ranks:
                raise DocumentError(f"rank of degree {deg} given twice", ln, col)
            r = _int(payload, ln, col)
            if r < 0:
                raise DocumentError("negative rank", ln, col)
            ranks[deg] = r
    diffs = {}
    for word, deg, payload, ln, col in entries:
        if word == "diff":
            diffs[deg] = _matrix(R, payload, ranks.get(deg + 1, 0), ranks.get(deg, 0), ln, col)
    c = cx.ChainComplex(R, ranks, diffs, name=name)
    rep = cx.validate(c)
    if not rep.ok:
        line = next((e[3] for e in entries if e[0] == "diff" and e[1] == rep.degree), None)
        raise DocumentError(f"complex {name}: d^{rep.degree + 1} d^{rep.degree} != 0",
                            line, 1 if line else None, rep.degree)
    return c


def _build_map(R, src, tgt, entries, ln) -> cx.ChainMap:
    comp = {}
    for _, deg, payload, l2, col in entries:
        comp[deg] = _matrix(R, payload, tgt.rank(deg), src.rank(deg), l2, col)
    f = cx.ChainMap(src, tgt, comp)
    bad = f.first_failure()
    if bad is not None:
        raise DocumentError(f"not a chain map: square at degree {bad} does not commute",
                            ln, 1, bad)
    return f


def render_complex(c: cx.ChainComplex, name: str | None = None) -> str:
    lines = [f"complex {name or c.name or ''}".rstrip()]
    for n in c.degrees:
        if c.rank(n):
            lines.append(f"rank {n} {c.rank(n)}")
    for n in c.degrees:
        d = c.diff(n)
        if d.rows and d.cols and not d.is_zero():
            lines.append(f"diff {n} {d.render()}")
    return "\n".join(lines)


def render_map(f: cx.ChainMap, name: str, src: str, tgt: str) -> str:
    lines = [f"map {name}: {src} -> {tgt}"]
    for n in f.degrees():
        m = f(n)
        if m.rows and m.cols and not m.is_zero():
            lines.append(f"component {n} {m.render()}")
    return "\n".join(lines)


def render_document(doc: Document) -> str:
    parts = [f"ring {doc.ring.tag}"]
    names = {}
    for name, c in doc.complexes.items():
        parts.append(render_complex(c, name))
        names[id(c)] = name
    for name, f in doc.maps.items():
        parts.append(render_map(f, name, names[id(f.source)], names[id(f.target)]))
    return "\n\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _module(text: str, ring) -> FgModule:
    try:
        orders = [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"bad module {text!r}: expected orders like '4' or '0,2'") from None
    if any(o < 0 or o == 1 for o in orders):
        if any(o < 0 for o in orders):
            raise UsageError(f"bad module {text!r}: orders must be >= 0")
    if ring.is_field and any(o not in (0, 1) for o in orders):
        raise UsageError("torsion orders make no sense over a field")
    return FgModule.from_orders(ring, orders)


def _load(path: str, ring) -> Document:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as e:
        raise UsageError(str(e)) from None
    return parse_document(text, ring)


def _pick(table: dict, name: str | None, what: str, index: int = 0):
    if name is not None:
        if name not in table:
            raise UsageError(f"no {what} named {name!r}")
        return name, table[name]
    if len(table) <= index:
        raise UsageError(f"document has no {what} #{index + 1}")
    key = list(table)[index]
    return key, table[key]


def _htable(c: cx.ChainComplex) -> dict:
    return {n: str(h) for n, h in cx.cohomology_table(c).items()}


def _htable_lines(table: dict) -> list:
    if not table:
        return ["all cohomology vanishes"]
    return [f"H^{n} = {h}" for n, h in sorted(table.items())]


class Result(NamedTuple):
    lines: list
    data: dict
    status: int = 0


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_cohomology(a, ring):
    doc = _load(a.file, ring)
    name, c = _pick(doc.complexes, a.complex, "complex")
    table = _htable(c)
    return Result([f"complex {name}"] + _htable_lines(table),
                  {"complex": name, "cohomology": table,
                   "euler_characteristic": cx.euler_characteristic(c)})


def _triangle_report(t, label):
    v = homotopy.exactness_verdict(t)
    return f"{label}: {v.status}" + (f" ({v.reason})" if v.reason else ""), v.status


def cmd_cone(a, ring):
    doc = _load(a.file, ring)
    name, f = _pick(doc.maps, a.map, "map")
    C = cn.cone(f).complex
    lines = [render_complex(C, f"cone({name})")]
    table = _htable(C)
    lines += _htable_lines(table)
    les = cn.cofiber_les(f)
    lines.append(f"cofiber sequence exact: {les.is_exact}")
    verdicts = []
    steps = cn.iterated_cofiber(f, max(1, a.rotate + 1))
    for k, step in enumerate(steps):
        line, status = _triangle_report(step.triangle, f"rotation {k}")
        lines.append(line)
        verdicts.append(status)
    data = {"cone": render_complex(C), "cohomology": table, "les_exact": les.is_exact,
            "verdicts": verdicts}
    ok = les.is_exact and all(v != "refuted" for v in verdicts)
    return Result(lines, data, 0 if ok else 1)


def cmd_cylinder(a, ring):
    doc = _load(a.file, ring)
    name, f = _pick(doc.maps, a.map, "map")
    cyl = cn.cylinder(f)
    lines = [render_complex(cyl.complex, f"cyl({name})")] + _htable_lines(_htable(cyl.complex))
    checks = {
        "out_Y in_Y = id": (cyl.out_Y @ cyl.in_Y).is_identity(),
        "id ~ in_Y out_Y": cyl.homotopy.check(),
    }
    r = cn.find_retraction(cyl.in_X)
    if r is not None:
        cmp = cn.ses_compare(cyl.in_X, r)
        checks["phi psi = id"] = (cmp.phi @ cmp.psi).is_identity()
        checks["psi phi ~ id"] = cmp.homotopy.check()
    lines += [f"{k}: {v}" for k, v in checks.items()]
    return Result(lines, {"cylinder": render_complex(cyl.complex), "checks": checks},
                  0 if all(checks.values()) else 1)


def cmd_shift(a, ring):
    doc = _load(a.file, ring)
    name, c = _pick(doc.complexes, a.complex, "complex")
    s = cx.shift(c, a.k)
    text = render_complex(s, f"{name}[{a.k}]")
    return Result([text], {"complex": text, "cohomology": _htable(s)})


def cmd_tensor(a, ring):
    doc = _load(a.file, ring)
    na, A = _pick(doc.complexes, a.left, "complex", 0)
    nb, B = _pick(doc.complexes, a.right, "complex", 1 if a.right is None else 0)
    if a.direct_sum:
        T, label = cx.biproduct(A, B).complex, f"{na}+{nb}"
    else:
        T, label = cx.tensor(A, B), f"{na}*{nb}"
    text = render_complex(T, label)
    table = _htable(T)
    return Result([text] + _htable_lines(table), {"complex": text, "cohomology": table})


def cmd_quasi_iso(a, ring):
    doc = _load(a.file, ring)
    name, f = _pick(doc.maps, a.map, "map")
    lines, per = [], {}
    for n in f.degrees():
        an = module_map_analysis(cx.induced_map(f, n))
        if an.kernel.is_zero() and an.cokernel.is_zero() and cx.cohomology(f.source, n).is_zero():
            continue
        per[n] = {"kernel": str(an.kernel), "cokernel": str(an.cokernel), "iso": an.is_iso}
        lines.append(f"H^{n}({name}): kernel {an.kernel}, cokernel {an.cokernel}, "
                     f"iso {an.is_iso}")
    q = cx.is_quasi_iso(f)
    inv = homotopy.find_homotopy_inverse(f)
    lines.append(f"quasi-isomorphism: {q}")
    lines.append(f"chain homotopy equivalence: {inv is not None}")
    return Result(lines, {"quasi_iso": q, "equivalence": inv is not None, "degrees": per},
                  0 if q else 1)


def cmd_null_homotopy(a, ring):
    doc = _load(a.file, ring)
    name, f = _pick(doc.maps, a.map, "map")
    h = homotopy.find_null_homotopy(f)
    if h is None:
        return Result([f"{name} is not null-homotopic"], {"null_homotopic": False}, 1)
    comps = {n: h(n).render() for n in sorted(h._comp)}
    lines = [f"{name} is null-homotopic"] + [f"s^{n} = {m}" for n, m in comps.items()]
    return Result(lines, {"null_homotopic": True, "homotopy": comps})


def cmd_hom_k(a, ring):
    doc = _load(a.file, ring)
    nb, B = _pick(doc.complexes, a.source, "complex", 0)
    nc, C = _pick(doc.complexes, a.target, "complex", 1 if a.target is None else 0)
    if a.derived is not None:
        try:
            m = derived.hom_derived(B, C, a.derived)
        except derived.UnsupportedOverZ as e:
            raise UsageError(str(e)) from None
        label = f"Hom_D({nb}, {nc}[{a.derived}])"
    else:
        m = homotopy.hom_in_K(B, C)
        label = f"Hom_K({nb}, {nc})"
    return Result([f"{label} = {m}"], {"hom": str(m)})


def cmd_resolve(a, ring):
    m = _module(a.module, ring)
    res = derived.free_resolution(m)
    text = render_complex(res.complex, "P")
    return Result([f"# resolution of {m}", text] + _htable_lines(_htable(res.complex)),
                  {"module": str(m), "resolution": text})


def cmd_derived_tensor(a, ring):
    m, n = _module(a.left, ring), _module(a.right, ring)
    mode = "one" if a.one_sided else "both"
    table = {k: str(h) for k, h in derived.derived_tensor_cohomology(m, n, mode).items()}
    return Result([f"{m} (x)^L {n}"] + _htable_lines(table), {"cohomology": table})


def cmd_tor(a, ring):
    r = derived.tor(_module(a.left, ring), _module(a.right, ring), a.i)
    return Result([str(r)], {"tor": str(r)})


def cmd_ext(a, ring):
    r = derived.ext(_module(a.left, ring), _module(a.right, ring), a.i)
    return Result([str(r)], {"ext": str(r)})


def cmd_truncate(a, ring):
    doc = _load(a.file, ring)
    name, c = _pick(doc.complexes, a.complex, "complex")
    tr = tstruct.truncate(c, a.n, a.side)
    label = f"tau<={a.n}({name})" if a.side == "below" else f"tau>={a.n + 1}({name})"
    text = render_complex(tr.complex, label)
    lines = [text] + _htable_lines(_htable(tr.complex))
    data = {"complex": text, "cohomology": _htable(tr.complex)}
    status = 0
    if a.triangle:
        tt = tstruct.truncation_triangle(c, a.n)
        lines.append(f"truncation triangle exact: {tt.exact}")
        data["triangle_exact"] = tt.exact
        status = 0 if tt.exact else 1
    return Result(lines, data, status)


def _verdict_lines(v, label):
    return [f"{label}: in T<={v.n}: {v.in_le_n}, in T>={v.n}: {v.in_ge_n}, heart: {v.heart}"]


def cmd_t_verdict(a, ring):
    doc = _load(a.file, ring)
    name, c = _pick(doc.complexes, a.complex, "complex")
    v = tstruct.standard_t_verdict(c, a.n)
    h0 = tstruct.heart_H0(c)
    lines = _verdict_lines(v, name) + [f"H^0 via truncations = {h0}"]
    return Result(lines, {"le": v.in_le_n, "ge": v.in_ge_n, "heart": v.heart, "H0": str(h0)})


def cmd_tilt_verdict(a, ring):
    doc = _load(a.file, ring)
    name, c = _pick(doc.complexes, a.complex, "complex")
    if c.ring.is_field:
        raise UsageError("tilt-verdict needs integer coefficients")
    v = tstruct.tilted_t_verdict(c, a.n)
    lines = _verdict_lines(v, name)
    data = {"le": v.in_le_n, "ge": v.in_ge_n, "heart": v.heart, "decomposition": {}}
    for n, h in sorted(cx.cohomology_table(c).items()):
        d = tstruct.torsion_decompose(h)
        lines.append(f"H^{n} = {h}: torsion {d.torsion}, torsion-free {d.free}")
        data["decomposition"][n] = [str(d.torsion), str(d.free)]
    return Result(lines, data)


def cmd_octahedron(a, ring):
    doc = _load(a.file, ring)
    nf, f = _pick(doc.maps, a.f, "map", 0)
    ng, g = _pick(doc.maps, a.g, "map", 1 if a.g is None else 0)
    if f.target != g.source:
        raise UsageError(f"{nf} and {ng} are not composable")
    rep = axioms.check_tr4(f, g)
    oc = rep.data["octahedron"]
    lines = []
    for label, C in (("U = cone f", oc.U), ("V = cone gf", oc.V), ("W = cone g", oc.W)):
        lines.append(f"{label}: " + ", ".join(_htable_lines(_htable(C))))
    lines += [f"{k}: {'pass' if v else 'FAIL'}" for k, v in rep.details.items()]
    lines += rep.notes
    return Result(lines, {"checks": rep.details, "notes": rep.notes}, 0 if rep.ok else 1)


def cmd_verify_axioms(a, ring):
    R = ring
    prof = axioms.AXIOM_PROFILE
    s = axioms.verify_axioms(a.seed, a.instances, R, prof)
    lines = [f"ring {R.tag}, seed {a.seed}, {a.instances} instances"] + s.lines()
    data = {"ring": R.tag, "passed": s.passed, "failed": s.failed}
    ok = s.ok
    if a.functor:
        import random
        good = 0
        for i in range(a.functor):
            rng = random.Random(f"{a.seed}:functor:{i}")
            X, Y, T = (axioms.random_complex(rng, R, prof) for _ in range(3))
            f = axioms.random_chain_map(rng, X, Y)
            good += axioms.check_cohomological_functor(cn.cone_triangle(f), T.complex).ok
        lines.append(f"cohomological functor: {'pass' if good == a.functor else 'FAIL'} "
                     f"({good}/{a.functor})")
        data["functor"] = good
        ok = ok and good == a.functor
    return Result(lines, data, 0 if ok else 1)


def cmd_generate(a, ring):
    prof = axioms.Profile(lo=a.lo, width=a.width, max_rank=a.max_rank,
                          entry_bound=a.entry_bound)
    g = axioms.random_complex(a.seed, ring, prof)
    doc = Document(ring, {"X": g.complex}, {})
    truth = {n: str(h) for n, h in g.ground_truth.items()}
    text = render_document(doc)
    comment = "".join(f"# H^{n} = {h}\n" for n, h in sorted(truth.items())) or "# acyclic\n"
    return Result([comment + text.rstrip()], {"document": text, "ground_truth": truth})


COMMANDS = {
    "cohomology": cmd_cohomology, "cone": cmd_cone, "cylinder": cmd_cylinder,
    "shift": cmd_shift, "tensor": cmd_tensor, "quasi-iso": cmd_quasi_iso,
    "null-homotopy": cmd_null_homotopy, "hom-k": cmd_hom_k, "resolve": cmd_resolve,
    "derived-tensor": cmd_derived_tensor, "tor": cmd_tor, "ext": cmd_ext,
    "truncate": cmd_truncate, "t-verdict": cmd_t_verdict, "tilt-verdict": cmd_tilt_verdict,
    "octahedron": cmd_octahedron, "verify-axioms": cmd_verify_axioms,
    "generate": cmd_generate,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class _SubParser(_Parser):
    """Also accepts ``--ring`` and ``--json`` after the subcommand."""

    def __init__(self, *args, **kw):
        super().__init__(*args, **kw)
        self.add_argument("--ring", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
        self.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                          help=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="chainlab", description="Exact computations with chain complexes.")
    p.add_argument("--ring", help=f"default ring (Z, Q, F<p>); else ${ENV_RING} or Z")
    p.add_argument("--json", action="store_true", help="emit one JSON object")
    sub = p.add_subparsers(dest="command", parser_class=_SubParser)

    def with_file(name, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("file", help="document path, or - for stdin")
        return s

    s = with_file("cohomology", "cohomology table of a complex")
    s.add_argument("--complex")
    s = with_file("cone", "mapping cone, its cohomology and exactness verdicts")
    s.add_argument("--map")
    s.add_argument("--rotate", type=int, default=0, help="also check this many rotations")
    s = with_file("cylinder", "mapping cylinder and its equivalences")
    s.add_argument("--map")
    s = with_file("shift", "shift a complex by k")
    s.add_argument("--complex")
    s.add_argument("--k", type=int, default=1)
    s = with_file("tensor", "tensor product (or direct sum) of two complexes")
    s.add_argument("--left")
    s.add_argument("--right")
    s.add_argument("--direct-sum", action="store_true")
    s = with_file("quasi-iso", "induced maps, quasi-iso test and homotopy inverse")
    s.add_argument("--map")
    s = with_file("null-homotopy", "solve for a null homotopy")
    s.add_argument("--map")
    s = with_file("hom-k", "Hom in the homotopy category (or derived, with --derived i)")
    s.add_argument("--source")
    s.add_argument("--target")
    s.add_argument("--derived", type=int, metavar="I")
    s = sub.add_parser("resolve", help="free resolution of a module")
    s.add_argument("module")
    s = sub.add_parser("derived-tensor", help="cohomology of a derived tensor product")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--one-sided", action="store_true")
    for name in ("tor", "ext"):
        s = sub.add_parser(name, help=f"{name.capitalize()}_i of two modules")
        s.add_argument("left")
        s.add_argument("right")
        s.add_argument("--i", type=int, default=1)
    s = with_file("truncate", "truncation below (tau<=n) or above (tau>=n+1)")
    s.add_argument("--complex")
    s.add_argument("--n", type=int, default=0)
    s.add_argument("--side", choices=("below", "above"), default="below")
    s.add_argument("--triangle", action="store_true", help="also check the truncation triangle")
    s = with_file("t-verdict", "standard t-structure membership")
    s.add_argument("--complex")
    s.add_argument("--n", type=int, default=0)
    s = with_file("tilt-verdict", "membership in the tilted t-structure (over Z)")
    s.add_argument("--complex")
    s.add_argument("--n", type=int, default=0)
    s = with_file("octahedron", "octahedral axiom for composable maps f, g")
    s.add_argument("--f")
    s.add_argument("--g")
    s = sub.add_parser("verify-axioms", help="check TR1-TR4 on generated instances")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--instances", type=int, default=100)
    s.add_argument("--functor", type=int, default=0, metavar="N",
                   help="also check the cohomological functor property on N instances")
    s = sub.add_parser("generate", help="random complex with known cohomology")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--lo", type=int, default=0)
    s.add_argument("--width", type=int, default=3)
    s.add_argument("--max-rank", type=int, default=3)
    s.add_argument("--entry-bound", type=int, default=5)
    return p


def run_command(argv, stdout=None, stderr=None) -> int:
    """Run one command; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    as_json = "--json" in argv
    try:
        a = parser.parse_args(argv)
        if not a.command:
            raise UsageError("missing command; see --help")
        tag = a.ring or os.environ.get(ENV_RING) or "Z"
        try:
            ring = ring_from_tag(tag)
        except ValueError as e:
            raise UsageError(str(e)) from None
        res = COMMANDS[a.command](a, ring)
    except (UsageError, DocumentError) as e:
        if as_json:
            print(json.dumps({"error": str(e)}, sort_keys=True), file=stdout)
        else:
            print(f"chainlab: error: {e}", file=stderr)
        return 2
    if a.json:
        out = dict(res.data)
        out["command"] = a.command
        out["status"] = res.status
        print(json.dumps(out, sort_keys=True, default=str), file=stdout)
    else:
        print("\n".join(res.lines), file=stdout)
    return res.status


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else list(argv))


if __name__ == "__main__":
    sys.exit(main())
