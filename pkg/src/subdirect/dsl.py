"""Line-oriented declaration format.

    # comment
    group S3 perm degree=3 gens="(1 2);(1 2 3)"
    group Z4 cyclic order=4
    group S4 symmetric degree=4
    group D8 dihedral order=8
    group Q quaternion
    group T table rows="0 1;1 0"
    group A product of="Z2 x Z2 x Z2"
    product P = S3 x S3
    subgroup U in P gens="[(1 2),(1 2)];[(1 2 3),(1 2 3)]"
    subgroup K in A gens="<1,0,0>"
    quotient G1 = A / K map=f1
    hom f : Z4 -> Z2 map="1:1"
    present Pr = [A; f1, f2]
    goursat Gs : Z4 x Z2 I="1" K="2" J="1" L="" sigma="1:1"
    pullback Pb = [t1, t2]

Element lists are separated by ';', generator images by ','.  Names must
be unique and every reference must point at an earlier declaration.
"""
import re
import shlex
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .goursat import GoursatData
from .groups import GroupTable, QuotientGroup, SubgroupSet, closure, extend_hom, parse_cycles
from .presentation import PullbackData, present
from .product import ProductGroup, as_product_subgroup, split_top_level

KINDS = ("group", "product", "subgroup", "quotient", "hom", "present", "goursat", "pullback")
GROUP_FORMS = ("perm", "cyclic", "symmetric", "dihedral", "quaternion", "table", "product")


class SpecSyntaxError(InputError):
    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Declaration:
    kind: str
    name: str
    form: str = ""                      # group form, or "" for other kinds
    refs: tuple = ()                    # names referenced, in order
    attrs: tuple = ()                   # (key, value) pairs, in order
    line: int = field(default=0, compare=False)
    text: str = field(default="", compare=False, repr=False)

    def column(self, key):
        """1-based column of key= in the source line (1 if absent)."""
        return self.text.find(key + "=") + 1 or 1

    def attr(self, key, default=None):
        for k, v in self.attrs:
            if k == key:
                return v
        return default


@dataclass
class SpecDocument:
    declarations: list = field(default_factory=list)

    def __eq__(self, other):
        return isinstance(other, SpecDocument) and self.declarations == other.declarations

    def names(self):
        return [d.name for d in self.declarations]

    def get(self, name):
        for d in self.declarations:
            if d.name == name:
                return d
        raise InputError(f"no declaration named {name!r}")

    def to_text(self):
        return "".join(emit(d) + "\n" for d in self.declarations)


_NAME = r"[A-Za-z_][A-Za-z0-9_.']*"
_NAME_RE = re.compile(rf"^{_NAME}$")


def _strip_comment(line):
    out, quote = [], False
    for ch in line:
        if ch == '"':
            quote = not quote
        if ch == "#" and not quote:
            break
        out.append(ch)
    return "".join(out).rstrip()


def _attrs(tokens, lineno, line):
    out = []
    for tok in tokens:
        if "=" not in tok:
            raise SpecSyntaxError(f"expected key=value, got {tok!r}", lineno, line.find(tok) + 1)
        k, v = tok.split("=", 1)
        out.append((k, v))
    return tuple(out)


def _split(text, lineno, line):
    try:
        return shlex.split(text, posix=True)
    except ValueError as exc:
        raise SpecSyntaxError(str(exc), lineno, len(line)) from None


def _check_name(name, lineno, line):
    if not _NAME_RE.match(name or ""):
        raise SpecSyntaxError(f"bad name {name!r}", lineno, max(1, line.find(name or "") + 1))
    return name


def _bracket_list(text, lineno, line):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise SpecSyntaxError("expected [ ... ]", lineno, line.find(text) + 1)
    return text[1:-1]


def parse_line(line, lineno):
    d = _parse_line(line, lineno)
    if d is not None:
        d = Declaration(d.kind, d.name, d.form, d.refs, d.attrs, d.line, line)
    return d


def _parse_line(line, lineno):
    body = _strip_comment(line)
    if not body.strip():
        return None
    head = body.split(None, 1)
    kind = head[0]
    rest = head[1] if len(head) > 1 else ""
    if kind not in KINDS:
        raise SpecSyntaxError(f"unknown declaration {kind!r}", lineno, body.find(kind) + 1)

    if kind == "group":
        toks = _split(rest, lineno, line)
        if len(toks) < 2:
            raise SpecSyntaxError("group needs a name and a form", lineno, len(line))
        name, form = toks[0], toks[1]
        if form not in GROUP_FORMS:
            raise SpecSyntaxError(f"unknown group form {form!r}", lineno, line.find(form) + 1)
        return Declaration("group", _check_name(name, lineno, line), form, (),
                           _attrs(toks[2:], lineno, line), lineno)

    if kind in ("product", "present", "pullback", "quotient"):
        if "=" not in rest:
            raise SpecSyntaxError("expected '='", lineno, len(line))
        name, rhs = (s.strip() for s in rest.split("=", 1))
        _check_name(name, lineno, line)
        if kind == "product":
            refs = tuple(s.strip() for s in re.split(r"\s+x\s+", rhs.strip()))
            for r in refs:
                _check_name(r, lineno, line)
            return Declaration(kind, name, "", refs, (), lineno)
        if kind == "quotient":
            toks = _split(rhs, lineno, line)
            if len(toks) < 3 or toks[1] != "/":
                raise SpecSyntaxError("expected 'quotient Q = G / N map=f'", lineno, len(line))
            attrs = _attrs(toks[3:], lineno, line)
            return Declaration(kind, name, "", (toks[0], toks[2]), attrs, lineno)
        inner = _bracket_list(rhs, lineno, line)
        if kind == "present":
            if ";" not in inner:
                raise SpecSyntaxError("expected [A; f1, f2, ...]", lineno, line.find("[") + 1)
            src, maps = inner.split(";", 1)
            refs = (src.strip(),) + tuple(s.strip() for s in maps.split(",") if s.strip())
        else:
            refs = tuple(s.strip() for s in inner.split(",") if s.strip())
        for r in refs:
            _check_name(r, lineno, line)
        return Declaration(kind, name, "", refs, (), lineno)

    if kind == "subgroup":
        toks = _split(rest, lineno, line)
        if len(toks) < 3 or toks[1] != "in":
            raise SpecSyntaxError("expected 'subgroup NAME in PARENT gens=...'", lineno, len(line))
        return Declaration(kind, _check_name(toks[0], lineno, line), "", (toks[2],),
                           _attrs(toks[3:], lineno, line), lineno)

    if kind == "hom":
        m = re.match(rf"^({_NAME})\s*:\s*({_NAME})\s*->\s*({_NAME})\s*(.*)$", rest)
        if not m:
            raise SpecSyntaxError("expected 'hom NAME : G -> H map=...'", lineno, len(kind) + 2)
        return Declaration(kind, m.group(1), "", (m.group(2), m.group(3)),
                           _attrs(_split(m.group(4), lineno, line), lineno, line), lineno)

    if kind == "goursat":
        m = re.match(rf"^({_NAME})\s*:\s*({_NAME})\s+x\s+({_NAME})\s*(.*)$", rest)
        if not m:
            raise SpecSyntaxError("expected 'goursat NAME : A x B I= K= J= L= sigma='",
                                  lineno, len(kind) + 2)
        return Declaration(kind, m.group(1), "", (m.group(2), m.group(3)),
                           _attrs(_split(m.group(4), lineno, line), lineno, line), lineno)
    raise AssertionError(kind)  # pragma: no cover


def _validate_perm(d):
    """Cycle notation is checked against the declared degree while parsing."""
    degree = _int_attr(d, "degree")
    for item in (s.strip() for s in _need(d, "gens").split(";")):
        if item:
            try:
                parse_cycles(item, degree)
            except InputError as exc:
                raise SpecSyntaxError(str(exc), d.line, d.column("gens")) from None


def parse_spec(text):
    doc = SpecDocument()
    seen = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        d = parse_line(line, lineno)
        if d is None:
            continue
        if d.name in seen:
            raise SpecSyntaxError(f"duplicate name {d.name!r}", lineno)
        if d.kind == "group" and d.form == "perm":
            _validate_perm(d)
        implied = [d.attr("map")] if d.kind == "quotient" and d.attr("map") else []
        for r in d.refs:
            if r not in seen:
                raise SpecSyntaxError(f"unknown reference {r!r}", lineno, max(1, line.find(r) + 1))
        seen.add(d.name)
        for extra in implied:
            if extra in seen:
                raise SpecSyntaxError(f"duplicate name {extra!r}", lineno)
            seen.add(extra)
        doc.declarations.append(d)
    return doc


def _q(v):
    if v == "" or re.search(r'[\s;,()\[\]<>:"#]', v):
        return '"' + v.replace('"', '\\"') + '"'
    return v


def emit(d):
    attrs = " ".join(f"{k}={_q(v)}" for k, v in d.attrs)
    if d.kind == "group":
        return " ".join(s for s in ("group", d.name, d.form, attrs) if s)
    if d.kind == "product":
        return f"product {d.name} = " + " x ".join(d.refs)
    if d.kind == "quotient":
        return f"quotient {d.name} = {d.refs[0]} / {d.refs[1]}" + (f" {attrs}" if attrs else "")
    if d.kind == "present":
        return f"present {d.name} = [{d.refs[0]}; " + ", ".join(d.refs[1:]) + "]"
    if d.kind == "pullback":
        return f"pullback {d.name} = [" + ", ".join(d.refs) + "]"
    if d.kind == "subgroup":
        return f"subgroup {d.name} in {d.refs[0]}" + (f" {attrs}" if attrs else "")
    if d.kind == "hom":
        return f"hom {d.name} : {d.refs[0]} -> {d.refs[1]}" + (f" {attrs}" if attrs else "")
    if d.kind == "goursat":
        return f"goursat {d.name} : {d.refs[0]} x {d.refs[1]}" + (f" {attrs}" if attrs else "")
    raise AssertionError(d.kind)  # pragma: no cover


# ----------------------------------------------------------------------------
# resolution

def _need(d, key):
    v = d.attr(key)
    if v is None:
        raise SpecSyntaxError(f"{d.kind} {d.name} needs {key}=", d.line, len(d.text) or 1)
    return v


def _int_attr(d, key):
    try:
        return int(_need(d, key))
    except ValueError:
        raise SpecSyntaxError(f"{key} must be an integer", d.line, d.column(key)) from None


def _elements(group, d, key):
    text = d.attr(key, "")
    items = [s.strip() for s in text.split(";") if s.strip()] if text else []
    try:
        return [group.parse_element(s) for s in items]
    except InputError as exc:
        raise SpecSyntaxError(str(exc), d.line, d.column(key)) from None


def _pairs(d, key):
    text = d.attr(key, "")
    out = []
    for item in split_top_level(text) if text.strip() else []:
        parts = split_top_level(item, ":")
        if len(parts) != 2:
            raise SpecSyntaxError(f"expected source:target, got {item!r}", d.line,
                                  d.column(key))
        out.append(tuple(parts))
    return out


def build_group(d, env):
    f = d.form
    label = d.name
    try:
        if f == "perm":
            gens = [s.strip() for s in _need(d, "gens").split(";") if s.strip()]
            return GroupTable.from_permutations(gens, _int_attr(d, "degree"), label=label)
        if f == "cyclic":
            return GroupTable.cyclic(_int_attr(d, "order"), label=label)
        if f == "symmetric":
            return GroupTable.symmetric(_int_attr(d, "degree"), label=label)
        if f == "dihedral":
            return GroupTable.dihedral(_int_attr(d, "order"), label=label)
        if f == "quaternion":
            return GroupTable.quaternion(label=label)
        if f == "table":
            rows = [r.split() for r in _need(d, "rows").split(";") if r.strip()]
            names = d.attr("names")
            names = names.split() if names else None
            return GroupTable.from_table([[int(v) for v in r] for r in rows], label=label,
                                         names=names)
        if f == "product":
            refs = [s.strip() for s in re.split(r"\s+x\s+", _need(d, "of").strip())]
            groups = []
            for r in refs:
                if not isinstance(env.get(r), GroupTable):
                    raise SpecSyntaxError(f"{r!r} is not a declared group", d.line)
                groups.append(env[r])
            return GroupTable.direct_product(groups, label=label)
    except ValueError as exc:
        if isinstance(exc, SpecSyntaxError):
            raise
        key = {"perm": "gens", "table": "rows", "product": "of"}.get(f, "order")
        raise SpecSyntaxError(str(exc), d.line, d.column(key)) from None
    raise AssertionError(f)  # pragma: no cover


def _typed(env, name, types, d):
    obj = env.get(name)
    if not isinstance(obj, types):
        raise SpecSyntaxError(f"{name!r} has the wrong kind here", d.line)
    return obj


def resolve(doc):
    """Build every declared object; returns a dict name -> object."""
    env = {}
    for d in doc.declarations:
        try:
            _resolve_one(d, env)
        except SpecSyntaxError:
            raise
        except InputError as exc:
            raise SpecSyntaxError(str(exc), d.line, d.column("map") if d.kind == "hom" else 1) \
                from None
    return env


def _resolve_one(d, env):
    k = d.kind
    if k == "group":
        env[d.name] = build_group(d, env)
    elif k == "product":
        env[d.name] = ProductGroup([_typed(env, r, GroupTable, d) for r in d.refs])
    elif k == "subgroup":
        parent = _typed(env, d.refs[0], (GroupTable, ProductGroup), d)
        gens = _elements(parent, d, "gens")
        s = closure(parent, gens)
        env[d.name] = as_product_subgroup(s) if isinstance(parent, ProductGroup) else s
    elif k == "quotient":
        g = _typed(env, d.refs[0], GroupTable, d)
        n = _typed(env, d.refs[1], SubgroupSet, d)
        if n.parent is not g:
            raise SpecSyntaxError(f"{d.refs[1]} is not a subgroup of {d.refs[0]}", d.line)
        q = QuotientGroup(g, n)
        table = q.as_table(label=d.name)
        env[d.name] = table
        if d.attr("map"):
            env[d.attr("map")] = q.projection(table)
    elif k == "hom":
        g = _typed(env, d.refs[0], GroupTable, d)
        h = _typed(env, d.refs[1], GroupTable, d)
        images = {}
        for a, b in _pairs(d, "map"):
            images[g.parse_element(a)] = h.parse_element(b)
        env[d.name] = extend_hom(g, h, images)
    elif k == "present":
        src = _typed(env, d.refs[0], GroupTable, d)
        from .groups import Homomorphism
        fs = [_typed(env, r, Homomorphism, d) for r in d.refs[1:]]
        env[d.name] = present(src, fs)
    elif k == "goursat":
        a = _typed(env, d.refs[0], GroupTable, d)
        b = _typed(env, d.refs[1], GroupTable, d)
        I = closure(a, _elements(a, d, "I"))
        K = closure(a, _elements(a, d, "K"))
        J = closure(b, _elements(b, d, "J"))
        L = closure(b, _elements(b, d, "L"))
        if not K.issubset(I) or not L.issubset(J):
            raise SpecSyntaxError("K must lie in I and L in J", d.line)
        qi, qj = QuotientGroup(I, K), QuotientGroup(J, L)
        images = {}
        for x, y in _pairs(d, "sigma"):
            images[int(qi.coset_of(a.parse_element(x)))] = int(qj.coset_of(b.parse_element(y)))
        f = extend_hom(qi.as_table(), qj.as_table(), images)
        env[d.name] = GoursatData(a, b, I, K, J, L, np.asarray(f.map))
    elif k == "pullback":
        from .groups import Homomorphism
        env[d.name] = PullbackData([_typed(env, r, Homomorphism, d) for r in d.refs])


def load(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    doc = parse_spec(text)
    return doc, resolve(doc)


# ----------------------------------------------------------------------------
# product expressions for --enumerate

_FACTOR_RE = re.compile(r"^(Z|S|D|Q)(\d+)(?:\^(\d+))?$")


def parse_product_expr(expr):
    """'Z2xZ2', 'Z2^3', 'S3 x S3', 'Z4xZ2xZ2', 'D8xZ2', 'Q8' -> ProductGroup."""
    from . import fixtures
    tokens = [t for t in re.split(r"\s*x\s*", expr.strip()) if t]
    if not tokens:
        raise InputError(f"empty product expression {expr!r}")
    factors = []
    for tok in tokens:
        m = _FACTOR_RE.match(tok)
        if not m:
            raise InputError(f"cannot read factor {tok!r} (use Zn, Sn, Dn, Q8, optional ^k)")
        fam, num, power = m.group(1), int(m.group(2)), int(m.group(3) or 1)
        if fam == "Z":
            g = fixtures.cyclic(num)
        elif fam == "S":
            g = fixtures.symmetric(num)
        elif fam == "D":
            g = fixtures.dihedral(num)
        elif num == 8:
            g = fixtures.quaternion()
        else:
            raise InputError("only Q8 is available")
        factors.extend([g] * power)
    return ProductGroup(factors)
