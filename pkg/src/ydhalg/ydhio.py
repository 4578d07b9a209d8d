"""The YDH interchange format and the JSON report schema.

YDH is a line-oriented sectioned text format (grammar in docs/ydh-format.md)
designed so that fixtures are diffable and trivial to author by hand:

    ydh 1
    label K[Z/3] over Z/2
    order 6
    group Z/2
    dim 3
    phi 0 perm 0 1 2
    psi 0 perm 0 1 2
    unit 1 0 0
    counit 1 1 1
    mult 0 0 0 1
    ...
    comult 0 0 0 1
    ...
    antipode 0 0 1
    end

Rendering is canonical (fixed section order, sparse entries sorted, scalars
in the canonical ascending-power form), so parse(render(x)) is the identity
and canonical files round-trip byte for byte.
"""

import json

from .abgroup import FinAbGroup
from .cyclo import CycNum, parse_scalar, render_scalar
from .errors import DimensionMismatch, ParseError
from .exactla import Mat, Tensor3
from .ydhopf import YDHopfAlgebra, ensure_antipode
from .ydmod import LEFT, RIGHT, YDModuleStruct

FORMAT_VERSION = 1


class YdhDocument:
    """The parsed shape of a YDH file, before it is checked into an
    algebra."""

    __slots__ = ("version", "label", "order", "group", "dim", "side",
                 "phi", "psi", "unit", "counit", "mult", "comult",
                 "antipode")

    def __init__(self):
        self.version = FORMAT_VERSION
        self.label = None
        self.order = None
        self.group = None
        self.dim = None
        self.side = LEFT
        self.phi = {}        # generator index -> Mat
        self.psi = {}
        self.unit = None
        self.counit = None
        self.mult = {}       # (i, j, k) -> CycNum
        self.comult = {}     # (k, i, j) -> CycNum
        self.antipode = None


def parse_group(text):
    text = text.strip()
    if text == "trivial":
        return FinAbGroup([])
    factors = []
    for part in text.replace("x", " x ").split(" x "):
        part = part.strip()
        if not part:
            continue
        if not part.startswith("Z/"):
            raise ValueError("bad group factor %r" % part)
        factors.append(int(part[2:]))
    return FinAbGroup(factors)


def render_group(group):
    if not group.invariant_factors:
        return "trivial"
    return " x ".join("Z/%d" % n for n in group.invariant_factors)


def _perm_of_matrix(mat):
    """Image list when the matrix is a permutation matrix, else None."""
    d = mat.nrows
    one, zero = CycNum.one(mat.order), CycNum.zero(mat.order)
    images = []
    for j in range(d):
        hits = [i for i in range(d) if not mat.rows[i][j].is_zero()]
        if len(hits) != 1 or mat.rows[hits[0]][j] != one:
            return None
        images.append(hits[0])
    if sorted(images) != list(range(d)):
        return None
    return images


def parse_document(text):
    """Parse YDH text into a YdhDocument, with line/column positions on
    every error."""
    doc = YdhDocument()
    lines = text.split("\n")
    i = 0
    seen_end = False
    pending_matrix = None    # (target dict, generator index, rows so far)

    def fail(lineno, col, expected):
        raise ParseError(lineno, col, expected)

    def token_col(line, index):
        # 1-based column of the index-th whitespace token
        col = 0
        count = 0
        k = 0
        while k < len(line):
            if line[k].isspace():
                k += 1
                continue
            start = k
            while k < len(line) and not line[k].isspace():
                k += 1
            if count == index:
                return start + 1
            count += 1
        return len(line) + 1

    def need_int(tokens, idx, lineno, line, what):
        if idx >= len(tokens):
            fail(lineno, len(line) + 1, what)
        try:
            return int(tokens[idx])
        except ValueError:
            fail(lineno, token_col(line, idx), what)

    def need_scalar(tokens, idx, lineno, line, what="scalar"):
        if doc.order is None:
            fail(lineno, 1, "order line before any scalars")
        if idx >= len(tokens):
            fail(lineno, len(line) + 1, what)
        text = " ".join(tokens[idx:])
        return parse_scalar(text, doc.order,
                            line=lineno, col=token_col(line, idx))

    for raw in lines:
        i += 1
        line = raw.rstrip()
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if seen_end:
            fail(i, 1, "no content after end")
        tokens = stripped.split()
        head = tokens[0]
        if pending_matrix is not None:
            target, gen, rows = pending_matrix
            if head != "row":
                fail(i, 1, "row line inside matrix block")
            if len(tokens) - 1 != doc.dim:
                fail(i, token_col(line, min(len(tokens), doc.dim) ),
                     "%d scalars" % doc.dim)
            row = [parse_scalar(t, doc.order, line=i,
                                col=token_col(line, idx + 1))
                   for idx, t in enumerate(tokens[1:])]
            rows.append(row)
            if len(rows) == doc.dim:
                target[gen] = Mat(doc.order, rows)
                pending_matrix = None
            continue
        if head == "ydh":
            doc.version = need_int(tokens, 1, i, line, "format version")
            if doc.version != FORMAT_VERSION:
                fail(i, token_col(line, 1), "format version %d" % FORMAT_VERSION)
        elif head == "label":
            doc.label = " ".join(tokens[1:])
        elif head == "order":
            doc.order = need_int(tokens, 1, i, line, "cyclotomic order")
            if doc.order < 1:
                fail(i, token_col(line, 1), "positive order")
        elif head == "group":
            try:
                doc.group = parse_group(" ".join(tokens[1:]))
            except ValueError:
                fail(i, token_col(line, 1), "group specification")
        elif head == "dim":
            doc.dim = need_int(tokens, 1, i, line, "dimension")
        elif head == "side":
            if len(tokens) != 2 or tokens[1] not in (LEFT, RIGHT):
                fail(i, token_col(line, 1), "'left' or 'right'")
            doc.side = tokens[1]
        elif head in ("phi", "psi"):
            target = doc.phi if head == "phi" else doc.psi
            gen = need_int(tokens, 1, i, line, "generator index")
            if len(tokens) < 3:
                fail(i, len(line) + 1, "'perm' or 'matrix'")
            if tokens[2] == "perm":
                imgs = [need_int(tokens, 3 + t, i, line, "image index")
                        for t in range(doc.dim or 0)]
                if len(tokens) - 3 != doc.dim:
                    fail(i, token_col(line, 2), "%d images" % doc.dim)
                one = CycNum.one(doc.order)
                zero = CycNum.zero(doc.order)
                target[gen] = Mat(doc.order,
                                  [[one if imgs[j] == r else zero
                                    for j in range(doc.dim)]
                                   for r in range(doc.dim)])
            elif tokens[2] == "matrix":
                pending_matrix = (target, gen, [])
            else:
                fail(i, token_col(line, 2), "'perm' or 'matrix'")
        elif head in ("unit", "counit"):
            if doc.dim is None:
                fail(i, 1, "dim line before vectors")
            if len(tokens) - 1 != doc.dim:
                fail(i, token_col(line, 1), "%d scalars" % doc.dim)
            vec = tuple(parse_scalar(t, doc.order, line=i,
                                     col=token_col(line, idx + 1))
                        for idx, t in enumerate(tokens[1:]))
            if head == "unit":
                doc.unit = vec
            else:
                doc.counit = vec
        elif head in ("mult", "comult"):
            a = need_int(tokens, 1, i, line, "index")
            b = need_int(tokens, 2, i, line, "index")
            c = need_int(tokens, 3, i, line, "index")
            val = need_scalar(tokens, 4, i, line)
            store = doc.mult if head == "mult" else doc.comult
            store[(a, b, c)] = val
        elif head == "antipode":
            a = need_int(tokens, 1, i, line, "index")
            b = need_int(tokens, 2, i, line, "index")
            val = need_scalar(tokens, 3, i, line)
            if doc.antipode is None:
                doc.antipode = {}
            doc.antipode[(a, b)] = val
        elif head == "end":
            seen_end = True
        else:
            fail(i, 1, "a section keyword")
    if pending_matrix is not None:
        fail(i, 1, "%d matrix rows" % doc.dim)
    if not seen_end:
        fail(i, 1, "end line")
    for name, value in (("order", doc.order), ("group", doc.group),
                        ("dim", doc.dim), ("unit", doc.unit),
                        ("counit", doc.counit)):
        if value is None:
            fail(i, 1, "a %s section" % name)
    return doc


def document_to_algebra(doc):
    """Build the (structurally checked, axioms NOT yet verified) algebra."""
    d = doc.dim
    order = doc.order
    group = doc.group
    eye = Mat.identity(order, d)
    phis = []
    psis = []
    for target, store in ((phis, doc.phi), (psis, doc.psi)):
        for gen in range(group.rank):
            target.append(store.get(gen, eye))
    for idx in list(doc.mult) + list(doc.comult):
        if not all(0 <= t < d for t in idx):
            raise DimensionMismatch("structure index %s out of range" % (idx,))
    module = YDModuleStruct(group, order, d, phis, psis, doc.side)
    mult = Tensor3(d, order, doc.mult)
    comult = Tensor3(d, order, doc.comult)
    anti = None
    if doc.antipode is not None:
        zero = CycNum.zero(order)
        rows = [[zero] * d for _ in range(d)]
        for (i, j), val in doc.antipode.items():
            if not (0 <= i < d and 0 <= j < d):
                raise DimensionMismatch("antipode index %s out of range"
                                        % ((i, j),))
            rows[j][i] = val
        anti = Mat(order, rows)
    return YDHopfAlgebra(module, mult, doc.unit, comult, doc.counit, anti,
                         label=doc.label)


def algebra_to_document(algebra):
    doc = YdhDocument()
    doc.label = algebra.label
    doc.order = algebra.order
    doc.group = algebra.group
    doc.dim = algebra.dim
    doc.side = algebra.side
    for gen in range(algebra.group.rank):
        doc.phi[gen] = algebra.module.phi_gens[gen]
        doc.psi[gen] = algebra.module.psi_gens[gen]
    doc.unit = tuple(algebra.unit)
    doc.counit = tuple(algebra.counit)
    doc.mult = dict(algebra.mult.entries)
    doc.comult = dict(algebra.comult.entries)
    if algebra.antipode is not None:
        doc.antipode = {}
        for i in range(algebra.dim):
            for j in range(algebra.dim):
                val = algebra.antipode.rows[j][i]
                if not val.is_zero():
                    doc.antipode[(i, j)] = val
    return doc


def render_document(doc):
    """Canonical text: fixed section order, sorted sparse entries, scalar
    text in canonical form, one trailing newline."""
    out = ["ydh %d" % doc.version]
    if doc.label:
        out.append("label %s" % doc.label)
    out.append("order %d" % doc.order)
    out.append("group %s" % render_group(doc.group))
    out.append("dim %d" % doc.dim)
    if doc.side != LEFT:
        out.append("side %s" % doc.side)
    for name, store in (("phi", doc.phi), ("psi", doc.psi)):
        for gen in sorted(store):
            mat = store[gen]
            perm = _perm_of_matrix(mat)
            if perm is not None:
                out.append("%s %d perm %s"
                           % (name, gen, " ".join(str(x) for x in perm)))
            else:
                out.append("%s %d matrix" % (name, gen))
                for row in mat.rows:
                    out.append("row %s"
                               % " ".join(render_scalar(x) for x in row))
    out.append("unit %s" % " ".join(render_scalar(x) for x in doc.unit))
    out.append("counit %s" % " ".join(render_scalar(x) for x in doc.counit))
    for idx in sorted(doc.mult):
        val = doc.mult[idx]
        if not val.is_zero():
            out.append("mult %d %d %d %s" % (idx + (render_scalar(val),)))
    for idx in sorted(doc.comult):
        val = doc.comult[idx]
        if not val.is_zero():
            out.append("comult %d %d %d %s" % (idx + (render_scalar(val),)))
    if doc.antipode is not None:
        for idx in sorted(doc.antipode):
            val = doc.antipode[idx]
            if not val.is_zero():
                out.append("antipode %d %d %s" % (idx + (render_scalar(val),)))
    out.append("end")
    return "\n".join(out) + "\n"


def load_algebra(path):
    with open(path, "r", encoding="utf-8") as fh:
        doc = parse_document(fh.read())
    return document_to_algebra(doc)


def save_algebra(path, algebra):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_document(algebra_to_document(algebra)))


# ---------------------------------------------------------------------------
# the JSON report schema


REPORT_SCHEMA = "ydh-report/1"


def _scalars(vec):
    return [render_scalar(x) for x in vec]


def _subgroup_json(sub):
    return [list(g) for g in sub.elements]


def _witness_json(w):
    if w is None:
        return None
    if isinstance(w, (tuple, list)):
        return [_witness_json(x) for x in w]
    if isinstance(w, (int, str, bool)):
        return w
    return str(w)


def _checks_json(checks):
    return [{"name": n, "passed": ok, "witness": _witness_json(w)}
            for n, ok, w in checks]


def outcome_to_report(outcome):
    """The canonical JSON-able report for one analysis outcome."""
    algebra = outcome.algebra
    report = {
        "schema": REPORT_SCHEMA,
        "label": algebra.label,
        "dim": algebra.dim,
        "order": algebra.order,
        "group": render_group(algebra.group),
        "side": algebra.side,
        "axioms": outcome.axiom_report.to_dict(),
        "passed": outcome.passed,
        "axioms_passed": outcome.axioms_passed,
        "theorems_passed": outcome.theorems_passed,
    }
    report["axioms"]["checks"] = [
        {"name": c["name"], "passed": c["passed"],
         "witness": _witness_json(c["witness"]), "category": c["category"]}
        for c in report["axioms"]["checks"]]
    if outcome.trivial is not None:
        report["trivial"] = {"is_trivial": outcome.trivial,
                             "witness": _witness_json(outcome.trivial_witness)}
    if outcome.integral_pair is not None:
        report["integrals"] = {
            "integral_element": _scalars(outcome.integral_pair.element),
            "integral_functional": _scalars(outcome.integral_pair.functional),
        }
    if outcome.analysis is not None:
        analysis = outcome.analysis
        report["idempotents"] = [{
            "index": rec.index,
            "vector": _scalars(rec.vector),
            "character": _scalars(rec.character),
            "inertia": _subgroup_json(rec.inertia),
            "isotropy": _subgroup_json(rec.isotropy),
            "index_group": list(rec.index_group.invariant_factors),
            "order_of_index_group": rec.index_value,
            "orbit": list(rec.orbit),
            "full_orbit": list(rec.full_orbit),
            "stability_set": list(rec.stability_set),
        } for rec in analysis.records]
    if outcome.char_product_sizes is not None:
        report["character_products"] = {
            "pair_sizes": outcome.char_product_sizes}
    if outcome.core_records:
        report["cores"] = [{
            "idempotent": r.e_idx,
            "partner": r.partner_idx,
            "size": r.m,
            "members": list(r.omega_indices),
            "freeness_rank": r.freeness_rank,
        } for r in outcome.core_records]
    report["checks"] = _checks_json(outcome.named_checks)
    report["theorem_failures"] = _checks_json(
        [(n, ok, w) for n, ok, w in outcome.named_checks if not ok])
    return report


def report_to_json(report):
    """Byte-deterministic serialization (no timestamps; timing is never
    part of the canonical report)."""
    return json.dumps(report, sort_keys=True, indent=1,
                      separators=(",", ": ")) + "\n"
