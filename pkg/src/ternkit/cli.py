"""Batch command-line front end.

Structure files are JSON documents (grammar in README.md).  Parsing is
strict: unknown or duplicate keys, malformed complex literals, shape
mismatches and dangling references are parse errors with a line/column.
Reports are JSON with sorted keys and check records sorted by id, so equal
inputs and flags give byte-identical output.

Exit codes: 0 when every selected check passes, 1 when any check fails or a
structure error occurs, 2 on parse or usage errors.
"""
import json
import json.decoder
import json.scanner
import sys
from dataclasses import dataclass, field

import click
import numpy as np

from . import __version__, arens, category, embedding, linalg, ternary, zettl
from .errors import ParseError, TernkitError, UnsupportedError
from .report import FAIL, Check, Report, check, skipped

FORMAT_VERSION = "ternkit/1"
DEFAULT_SETTINGS = {"tol": linalg.DEFAULT_TOL, "samples": 50, "seed": 0}
KINDS = ("tro", "ternary", "category", "functor")


# ------------------------------------------------------------------ parsing


class _Node:
    """Mixin carrying the source offset of a JSON container."""

    pos = 0


class _Obj(dict, _Node):
    pass


class _Arr(list, _Node):
    pass


class _Decoder(json.JSONDecoder):
    """JSON decoder that records container offsets and rejects duplicate keys."""

    def __init__(self, text):
        super().__init__()
        self.text = text

        def parse_object(s_and_end, strict, scan_once, object_hook, object_pairs_hook, memo=None):
            start = s_and_end[1] - 1
            pairs, end = json.decoder.JSONObject(s_and_end, strict, scan_once, None, list, memo)
            obj = _Obj()
            obj.pos = start
            for key, value in pairs:
                if key in obj:
                    line, col = _locate(text, start)
                    raise ParseError(f"duplicate key {key!r}", line, col)
                obj[key] = value
            return obj, end

        def parse_array(s_and_end, scan_once):
            start = s_and_end[1] - 1
            values, end = json.decoder.JSONArray(s_and_end, scan_once)
            arr = _Arr(values)
            arr.pos = start
            return arr, end

        self.parse_object = parse_object
        self.parse_array = parse_array
        self.memo = {}
        self.scan_once = json.scanner.py_make_scanner(self)


def _locate(text, pos):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


@dataclass
class Entry:
    name: str
    kind: str
    obj: object  # built structure
    data: dict = field(default_factory=dict)


@dataclass
class StructureFile:
    version: str
    settings: dict
    entries: dict  # name -> Entry, in file order


class _Ctx:
    def __init__(self, text):
        self.text = text

    def fail(self, node, message):
        line, col = _locate(self.text, getattr(node, "pos", 0))
        raise ParseError(message, line, col)

    def obj(self, node, where, required, optional=()):
        if not isinstance(node, dict):
            self.fail(node, f"{where} must be an object")
        unknown = sorted(set(node) - set(required) - set(optional))
        if unknown:
            self.fail(node, f"{where}: unknown key(s) {', '.join(unknown)}")
        missing = [k for k in required if k not in node]
        if missing:
            self.fail(node, f"{where}: missing key(s) {', '.join(missing)}")
        return node

    def integer(self, parent, value, where, minimum=0):
        if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
            self.fail(parent, f"{where} must be an integer ≥ {minimum}")
        return value

    def real(self, parent, value, where):
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not np.isfinite(value):
            self.fail(parent, f"{where} must be a finite real number")
        return float(value)

    def complex_(self, parent, value, where):
        if not isinstance(value, list) or len(value) != 2:
            self.fail(value if isinstance(value, list) else parent,
                      f"{where}: complex numbers are written [re, im]")
        return complex(self.real(value, value[0], where), self.real(value, value[1], where))

    def matrix(self, node, where, shape=None):
        if not isinstance(node, list) or not node or not all(isinstance(r, list) for r in node):
            self.fail(node, f"{where} must be a non-empty list of rows")
        cols = len(node[0])
        if cols == 0 or any(len(r) != cols for r in node):
            self.fail(node, f"{where}: rows have unequal or zero length")
        m = np.array([[self.complex_(r, v, where) for v in r] for r in node], dtype=complex)
        if shape is not None and m.shape != tuple(shape):
            self.fail(node, f"{where}: shape {m.shape} does not match declared {tuple(shape)}")
        return m

    def sign(self, parent, value, where, length):
        if isinstance(value, list):
            if len(value) != length:
                self.fail(value, f"{where}: sign vector needs {length} entries")
            out = [self._unit_sign(value, v, where) for v in value]
            return np.array(out, dtype=float)
        return self._unit_sign(parent, value, where)

    def _unit_sign(self, parent, v, where):
        if isinstance(v, bool) or v not in (1, -1):
            self.fail(parent, f"{where}: signs must be +1 or -1")
        return int(v)


def parse(text):
    """Parse a structure file; raises ParseError with line and column."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"file is not UTF-8: {exc}") from None
    try:
        root = _Decoder(text).decode(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", exc.lineno, exc.colno) from None
    ctx = _Ctx(text)
    ctx.obj(root, "file", ("version", "structures"), ("settings",))
    if root["version"] != FORMAT_VERSION:
        ctx.fail(root, f"unsupported version {root['version']!r} (expected {FORMAT_VERSION!r})")
    settings = dict(DEFAULT_SETTINGS)
    if "settings" in root:
        s = ctx.obj(root["settings"], "settings", (), ("tol", "samples", "seed"))
        if "tol" in s:
            settings["tol"] = ctx.real(s, s["tol"], "settings.tol")
            if settings["tol"] <= 0:
                ctx.fail(s, "settings.tol must be positive")
        if "samples" in s:
            settings["samples"] = ctx.integer(s, s["samples"], "settings.samples", 1)
        if "seed" in s:
            settings["seed"] = ctx.integer(s, s["seed"], "settings.seed", 0)
    structs = root["structures"]
    if not isinstance(structs, dict) or not structs:
        ctx.fail(structs, "structures must be a non-empty object")
    entries = {}
    tol = settings["tol"]
    for name, node in structs.items():
        if not isinstance(node, dict) or "kind" not in node:
            ctx.fail(node if isinstance(node, dict) else structs, f"structure {name!r} needs a 'kind'")
        kind = node["kind"]
        if kind not in KINDS:
            ctx.fail(node, f"structure {name!r}: unknown kind {kind!r}")
        where = f"structure {name!r}"
        if kind == "tro":
            entries[name] = _parse_tro(ctx, name, node, where, tol)
        elif kind == "ternary":
            entries[name] = _parse_ternary(ctx, name, node, where, tol)
        elif kind == "category":
            entries[name] = _parse_category(ctx, name, node, where, tol)
        else:
            entries[name] = Entry(name, kind, None, dict(node))
    for name, e in entries.items():
        if e.kind == "functor":
            e.obj = _parse_functor(ctx, name, structs[name], entries)
    return StructureFile(root["version"], settings, entries)


def _parse_tro(ctx, name, node, where, tol):
    ctx.obj(node, where, ("kind", "shape", "generators"), ("sign",))
    shape = node["shape"]
    if not isinstance(shape, list) or len(shape) != 2:
        ctx.fail(node, f"{where}: shape must be [rows, cols]")
    rows = ctx.integer(shape, shape[0], f"{where}.shape", 1)
    cols = ctx.integer(shape, shape[1], f"{where}.shape", 1)
    gens = node["generators"]
    if not isinstance(gens, list):
        ctx.fail(node, f"{where}: generators must be a list of matrices")
    mats = [ctx.matrix(g, f"{where}.generators[{i}]", (rows, cols)) for i, g in enumerate(gens)]
    sign = node.get("sign", 1)
    if isinstance(sign, list) and sign and isinstance(sign[0], list):
        mask = np.array([[ctx._unit_sign(r, v, f"{where}.sign") for v in r] for r in sign], dtype=float)
        if mask.shape != (rows, cols):
            ctx.fail(sign, f"{where}: sign mask must be {rows}×{cols}")
        sign = mask
    else:
        sign = ctx.sign(node, sign, f"{where}.sign", rows)
    space = linalg.span(mats, tol=tol, shape=(rows, cols))
    return Entry(name, "tro", ternary.ConcreteTRO(space, sign), {"generators": mats, "sign": sign})


def _parse_ternary(ctx, name, node, where, tol):
    ctx.obj(node, where, ("kind", "dim", "entries"))
    n = ctx.integer(node, node["dim"], f"{where}.dim", 1)
    ent = node["entries"]
    if not isinstance(ent, list):
        ctx.fail(node, f"{where}: entries must be a list")
    c = np.zeros((n, n, n, n), dtype=complex)
    seen = set()
    for item in ent:
        if not isinstance(item, list) or len(item) != 5:
            ctx.fail(item if isinstance(item, list) else ent, f"{where}: entries are [i, j, k, l, [re, im]]")
        idx = tuple(ctx.integer(item, v, f"{where} entry index", 0) for v in item[:4])
        if any(v >= n for v in idx):
            ctx.fail(item, f"{where}: entry index out of range for dim {n}")
        if idx in seen:
            ctx.fail(item, f"{where}: duplicate entry {list(idx)}")
        seen.add(idx)
        c[idx] = ctx.complex_(item, item[4], f"{where} entry value")
    return Entry(name, "ternary", ternary.StructureConstants(c, tol))


def _parse_category(ctx, name, node, where, tol):
    ctx.obj(node, where, ("kind", "flavor", "objects", "homs"), ("signs", "unital"))
    flavor = node["flavor"]
    if flavor not in (category.CSTAR, category.TSTAR):
        ctx.fail(node, f"{where}: flavor must be 'cstar' or 'tstar'")
    objs = node["objects"]
    if not isinstance(objs, dict) or not objs:
        ctx.fail(node, f"{where}: objects must map names to dimensions")
    objects = {k: ctx.integer(objs, v, f"{where}.objects.{k}", 1) for k, v in objs.items()}

    def pair(h, label):
        for key in ("from", "to"):
            if h[key] not in objects:
                ctx.fail(h, f"{where}: {label} refers to unknown object {h[key]!r}")
        return h["from"], h["to"]

    homs = {}
    if not isinstance(node["homs"], list):
        ctx.fail(node, f"{where}: homs must be a list")
    for h in node["homs"]:
        ctx.obj(h, f"{where} hom", ("from", "to", "generators"))
        x, y = pair(h, "hom")
        if (x, y) in homs:
            ctx.fail(h, f"{where}: duplicate hom ({x},{y})")
        if not isinstance(h["generators"], list):
            ctx.fail(h, f"{where}: hom generators must be a list")
        mats = [ctx.matrix(g, f"{where} hom ({x},{y})", (objects[y], objects[x])) for g in h["generators"]]
        homs[(x, y)] = linalg.span(mats, tol=tol, shape=(objects[y], objects[x]))
    signs = {}
    for s in node.get("signs", []):
        ctx.obj(s, f"{where} sign", ("from", "to", "sign"))
        x, w = pair(s, "sign")
        if (x, w) in signs:
            ctx.fail(s, f"{where}: duplicate sign ({x},{w})")
        signs[(x, w)] = ctx.sign(s, s["sign"], f"{where} sign ({x},{w})", objects[w])
    unital = node.get("unital", False)
    if not isinstance(unital, bool):
        ctx.fail(node, f"{where}: unital must be true or false")
    if flavor == category.CSTAR and signs:
        ctx.fail(node, f"{where}: C*-categories take no signs")
    cat = category.FiniteStarCategory(objects, homs, flavor, signs, unital, tol)
    return Entry(name, "category", cat)


def _parse_functor(ctx, name, node, entries):
    """A linear map given by the images of the source generators.

    For a tro source the generators are the declared matrices; for a ternary
    source they are the basis vectors.  Images are matrices for a tro target
    and [re, im] coefficient lists for a ternary target.
    """
    where = f"structure {name!r}"
    ctx.obj(node, where, ("kind", "source", "target", "images"))
    for key in ("source", "target"):
        ref = node[key]
        if ref not in entries:
            ctx.fail(node, f"{where}: {key} refers to missing structure {ref!r}")
        if entries[ref].kind not in ("tro", "ternary"):
            ctx.fail(node, f"{where}: {key} {ref!r} must be a tro or ternary structure")
    src_e, dst_e = entries[node["source"]], entries[node["target"]]
    src, dst = src_e.obj, dst_e.obj
    if src_e.kind == "tro":
        gens = np.array([src.space.coords(g) for g in src_e.data["generators"]]).reshape(-1, src.dim).T
    else:
        gens = np.eye(src.dim, dtype=complex)
    images = node["images"]
    if not isinstance(images, list) or len(images) != gens.shape[1]:
        ctx.fail(node, f"{where}: images must list one image per source generator ({gens.shape[1]})")
    cols, off = [], 0.0
    for i, img in enumerate(images):
        if dst_e.kind == "tro":
            m = ctx.matrix(img, f"{where}.images[{i}]", dst.shape)
            off = max(off, linalg.residual(dst.space, m))
            cols.append(dst.space.coords(m))
        else:
            if not isinstance(img, list) or len(img) != dst.dim:
                ctx.fail(img if isinstance(img, list) else images, f"{where}.images[{i}] needs {dst.dim} coefficients")
            cols.append(np.array([ctx.complex_(img, v, f"{where}.images[{i}]") for v in img]))
    if off > dst.tol * 10:
        ctx.fail(images, f"{where}: an image lies outside target {node['target']!r} (residual {off:.3e})")
    targets = np.array(cols).reshape(-1, dst.dim).T
    phi = targets @ np.linalg.pinv(gens)
    if np.abs(phi @ gens - targets).max(initial=0.0) > 1e-8 * max(1.0, np.abs(targets).max(initial=0.0)):
        ctx.fail(images, f"{where}: images do not respect the linear relations among the source generators")
    return (node["source"], node["target"], phi)


def load(path):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse(data)


# --------------------------------------------------------------- commands


def _prefixed(name, rep):
    out = Report()
    for c in rep.checks:
        out.add(Check(f"{name}/{c.check_id}", c.anchor, c.status, c.max_residual, c.witnesses, c.details))
    return out


def _guard(rep, name, label, fn):
    """Run fn() -> Report; record structure errors as failing checks."""
    try:
        rep.add(_prefixed(name, fn()))
    except UnsupportedError as exc:
        rep.add(skipped(f"{name}/{label}", "", str(exc)))
    except TernkitError as exc:
        if exc.report is not None:
            rep.add(_prefixed(name, exc.report))
        rep.add(Check(f"{name}/{label}", "", FAIL, float("inf"), [], {"error": str(exc)}))


def _check_system(sys_, opts, concrete):
    rep = Report()
    if concrete:
        closed = rep.add(ternary.check_closure(sys_))
        if not closed.passed:
            for cid in ("associativity", "embedding"):
                rep.add(skipped(cid, "", "generators do not span a closed system; run `closure`"))
            return rep
    assoc = ternary.check_associativity(sys_, tol=opts["tol"], seed=opts["seed"])
    rep.add(assoc)
    if concrete:
        rep.add(ternary.check_norm_axioms(sys_, samples=opts["samples"], seed=opts["seed"]))
    if not assoc.passed:
        return rep
    rep.add(embedding.check_pair_identities(sys_))
    rep.add(embedding.check_module_identities(sys_))
    E, erep = embedding.standard_embedding(sys_, samples=opts["samples"], seed=opts["seed"])
    rep.add(erep)
    _, prep = embedding.pi_representation(E, samples=opts["samples"], seed=opts["seed"])
    rep.add(prep)
    if concrete and sys_.scalar_sign == 1:
        rep.add(embedding.check_cstar_identity(E, samples=opts["samples"], seed=opts["seed"]))
        rep.add(embedding.cstar_identity_R(sys_, samples=opts["samples"], seed=opts["seed"]))
    return rep


def _functor_report(entries, spec, opts):
    src_name, dst_name, m = spec
    src, dst = entries[src_name].obj, entries[dst_name].obj
    rep = Report()
    try:
        rep.add(ternary.check_homomorphism_contractive(m, src, dst, samples=opts["samples"], seed=opts["seed"]))
    except TernkitError as exc:
        if exc.report is not None:
            rep.add(exc.report)
            return rep
        raise
    ext = embedding.functorial_extension(m, src, dst, samples=min(opts["samples"], 20), seed=opts["seed"])
    rep.add(ext.report)
    return rep


def _cmd_check(entry, entries, opts):
    if entry.kind == "tro":
        return _check_system(entry.obj, opts, True)
    if entry.kind == "ternary":
        return _check_system(entry.obj, opts, False)
    if entry.kind == "category":
        return category.check_axioms(entry.obj, samples=opts["samples"], seed=opts["seed"], tol=opts["tol"])
    return _functor_report(entries, entry.obj, opts)


def _cmd_closure(entry, entries, opts):
    if entry.kind != "tro":
        return None
    gens = entry.data["generators"]
    tro = ternary.ternary_closure(gens, sign=entry.data["sign"], tol=opts["tol"], shape=entry.obj.shape)
    rep = Report()
    c = rep.add(ternary.check_closure(tro))
    c.details.update(generator_span_dim=entry.obj.dim, closure_dim=tro.dim)
    return rep


def _cmd_linking(entry, entries, opts):
    if entry.kind == "tro" and entry.obj.scalar_sign == 1:
        space = ternary.linking_algebra(entry.obj)
        res = ternary._check_star_algebra(space)
        rep = Report()
        rep.add(check("linking_star_algebra", "the C*-algebra of 2×2 blocks [C X; X* D]", res, 1e3 * opts["tol"],
                      dimension=space.dim, left_dim=ternary.left_algebra(entry.obj).dim,
                      right_dim=ternary.right_algebra(entry.obj).dim))
        return rep
    if entry.kind in ("tro", "ternary"):
        _, rep = embedding.standard_embedding(entry.obj, samples=opts["samples"], seed=opts["seed"])
        return rep
    if entry.kind == "category" and entry.obj.flavor == category.TSTAR:
        A, F, rep = category.linking_category(entry.obj, seed=opts["seed"])
        *_, krep = category.kernel_ideal_and_quotient(entry.obj, seed=opts["seed"], linking=(A, F, rep))
        rep.add(krep)
        return rep
    return None


def _cmd_zettl(entry, entries, opts):
    if entry.kind in ("tro", "ternary"):
        dec = zettl.decompose(entry.obj, seed=opts["seed"], realize_parts=opts["realize"], samples=opts["samples"])
        rep = dec.report
        rep.add(check("zettl_summary", zettl.ANCHOR_UNIQUE, 0.0, 0.0, plus_dim=dec.plus_dim,
                      minus_dim=dec.minus_dim, eigenvalues=dec.grading.eigenvalues,
                      block_signs=dec.grading.block_signs))
        return rep
    if entry.kind == "category" and entry.obj.flavor == category.TSTAR:
        Cp, Cm, rep = category.pm_subcategories(entry.obj, seed=opts["seed"])
        rep.add(check("pm_summary", category.ANCHOR_PM, 0.0, 0.0,
                      plus={f"{x}->{y}": Cp.hom(x, y).dim for x, y in Cp.hom_pairs},
                      minus={f"{x}->{y}": Cm.hom(x, y).dim for x, y in Cm.hom_pairs}))
        return rep
    return None


def _cmd_arens(entry, entries, opts):
    if entry.kind != "category":
        return None
    return arens.regularity_report(entry.obj, samples=opts["samples"], seed=opts["seed"])


def _cmd_gn(entry, entries, opts):
    if entry.kind == "category" and entry.obj.flavor == category.TSTAR:
        _, rep = category.gelfand_naimark_functor(entry.obj, seed=opts["seed"])
        return rep
    if entry.kind == "category":
        sigma = category.faithful_representation(entry.obj)
        gap = 0
        for pair, mats in sigma.items():
            gap = max(gap, len(mats) - int(np.linalg.matrix_rank(mats.reshape(len(mats), -1), tol=1e-9)))
        rep = Report()
        rep.add(check("gn_faithful", category.ANCHOR_FAITHFUL, float(gap), 0.0))
        return rep
    if entry.kind in ("tro", "ternary"):
        dec = zettl.decompose(entry.obj, seed=opts["seed"], realize_parts=True, samples=opts["samples"])
        return dec.report
    return None


COMMANDS = {
    "check": _cmd_check,
    "closure": _cmd_closure,
    "linking": _cmd_linking,
    "zettl": _cmd_zettl,
    "arens": _cmd_arens,
    "gn": _cmd_gn,
}


def run(command, path, tol=None, seed=None, samples=None, realize=False, only=None):
    """Run a command on a structure file; returns (exit_code, report dict).

    Raises ParseError for malformed files.
    """
    sf = load(path)
    opts = dict(sf.settings)
    for key, val in (("tol", tol), ("seed", seed), ("samples", samples)):
        if val is not None:
            opts[key] = val
    opts["realize"] = bool(realize)
    names = list(sf.entries)
    if only:
        missing = [n for n in only if n not in sf.entries]
        if missing:
            raise ParseError(f"no structure named {', '.join(map(repr, missing))}")
        names = list(only)
    rep = Report(environment={
        "command": command, "seed": opts["seed"], "tol": opts["tol"], "samples": opts["samples"],
        "realize": opts["realize"], "version": __version__, "format": sf.version,
    })
    fn = COMMANDS[command]
    for name in names:
        entry = sf.entries[name]
        sub = Report()
        if entry.kind == "tro" and command not in ("check", "closure"):
            closed = ternary.check_closure(entry.obj)
            if not closed.passed:
                sub.add(_prefixed(name, Report([closed])))
                rep.add(sub)
                continue
        _guard(sub, name, f"{command}_error", lambda: fn(entry, sf.entries, opts) or _not_applicable(command, entry))
        rep.add(sub)
    return (0 if rep.passed else 1), rep.to_dict()


def _not_applicable(command, entry):
    r = Report()
    r.add(skipped(command, "", f"`{command}` does not apply to a {entry.kind} structure"))
    return r


def dumps(report):
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# --------------------------------------------------------------------- click


def _common(fn):
    fn = click.option("--name", "only", multiple=True, help="Restrict to the named structure (repeatable).")(fn)
    fn = click.option("--out", type=click.Path(dir_okay=False), help="Write the report here instead of stdout.")(fn)
    fn = click.option("--samples", type=click.IntRange(min=1), help="Random samples per sampled check.")(fn)
    fn = click.option("--seed", type=click.IntRange(min=0), help="Seed for every random draw.")(fn)
    fn = click.option("--tol", type=click.FloatRange(min=0, min_open=True), help="Tolerance override.")(fn)
    fn = click.argument("file", type=click.Path(dir_okay=False))(fn)
    return fn


def _execute(command, file, tol, seed, samples, out, only, realize=False):
    try:
        code, report = run(command, file, tol=tol, seed=seed, samples=samples, realize=realize, only=only)
    except ParseError as exc:
        click.echo(f"parse error: {exc}", err=True)
        sys.exit(2)
    text = dumps(report)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    if code:
        click.echo("failed checks: " + ", ".join(report["failed"]), err=True)
        for c in report["checks"]:
            if c["status"] == FAIL and c["witnesses"]:
                click.echo(f"  {c['check_id']} witness: {json.dumps(c['witnesses'][0])}", err=True)
    sys.exit(code)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="ternkit")
def main():
    """Construct and verify ternary operator structures from a structure file."""


@main.command("check")
@_common
def check_cmd(file, tol, seed, samples, out, only):
    """Axiom suites appropriate to each structure."""
    _execute("check", file, tol, seed, samples, out, only)


@main.command("closure")
@_common
def closure_cmd(file, tol, seed, samples, out, only):
    """Ternary closure of the generators of each tro."""
    _execute("closure", file, tol, seed, samples, out, only)


@main.command("linking")
@_common
def linking_cmd(file, tol, seed, samples, out, only):
    """Linking algebra (tro) or linking category (T*-category)."""
    _execute("linking", file, tol, seed, samples, out, only)


@main.command("zettl")
@_common
@click.option("--realize", is_flag=True, help="Also realize both parts concretely.")
def zettl_cmd(file, tol, seed, samples, out, only, realize):
    """Zettl decomposition and grading operator."""
    _execute("zettl", file, tol, seed, samples, out, only, realize)


@main.command("arens")
@_common
def arens_cmd(file, tol, seed, samples, out, only):
    """Bidual (Arens / Sherman–Takeda) verification suite."""
    _execute("arens", file, tol, seed, samples, out, only)


@main.command("gn")
@_common
def gn_cmd(file, tol, seed, samples, out, only):
    """Gelfand–Naimark functor construction and faithfulness."""
    _execute("gn", file, tol, seed, samples, out, only)


if __name__ == "__main__":  # pragma: no cover
    main()
