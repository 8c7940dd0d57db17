"""Reports and their text, JSON ("nfc-1") and LaTeX renderings.

Emitters are deterministic: a fixed report always gives the same bytes.
"""

import hashlib
import json
import re
from math import gcd
from dataclasses import dataclass, field

from gmpy2 import mpq

from .poly import Poly, SymbolTable
from .ratfn import RatFn

FORMAT_VERSION = "nfc-1"
_BASIS_TEX = {"E": "E", "T1": "\\Theta^{1}", "T2": "\\Theta^{2}"}


@dataclass
class Term:
    basis: str          # E, T1, T2
    m: int
    n: int
    mu: tuple
    label: str
    coeff: RatFn

    def name(self):
        kind = {"E": "E", "T1": "Theta1", "T2": "Theta2"}[self.basis]
        return f"{kind}_{{{self.m},{self.n}}}"


@dataclass
class Report:
    command: str
    mode: str
    N: int
    M: int = 0
    level: str = "first"
    case: str = ""
    classification: dict = field(default_factory=dict)
    symbols: tuple = ()
    muNames: tuple = ()
    terms: list = field(default_factory=list)
    digest: dict = field(default_factory=dict)
    caveats: list = field(default_factory=list)
    verdict: str = ""


def step_digest(stages):
    """Per-stage step counts and a hash of the full generator log."""
    h = hashlib.sha256()
    out = []
    for st in stages:
        out.append({"name": st.name, "steps": len(st.steps)})
        for step in st.steps:
            h.update(f"{st.name}|{step.grade}".encode())
            for g in sorted(step.generator, key=repr):
                h.update(f"|{g!r}={step.generator[g]}".encode())
    return {"stages": out, "sha256": h.hexdigest()}


# ---------------------------------------------------------------- readable coefficients

def _lcm(a, b):
    return a * b // gcd(a, b)


def _primitive(p: Poly):
    """(c, P) with p = c P, P integral, coprime, positive leading coefficient."""
    coeffs = [x for re_im in p.terms.values() for x in re_im if x]
    den = 1
    num = 0
    for x in coeffs:
        den = _lcm(den, int(x.denominator))
        num = gcd(num, int(x.numerator))
    c = mpq(num, den)
    lead = p.terms[max(p.terms)]
    if (lead[0] or lead[1]) < 0:
        c = -c
    return c, p.scale(1 / c)


def _wrap(s):
    return f"({s})" if any(ch in s for ch in "+- ") else s


def format_coeff(c: RatFn) -> str:
    """Human-readable form such as (a5 + a9)/2."""
    if c.is_zero():
        return "0"
    cn, pn = _primitive(c.num)
    cd, pd = _primitive(c.den)
    k = cn / cd
    p, q = int(k.numerator), int(k.denominator)
    ns = str(pn)
    if ns == "1":
        top = str(p)
    elif p == 1:
        top = _wrap(ns) if (q != 1 or not pd.is_const()) else ns
    elif p == -1:
        top = "-" + _wrap(ns)
    else:
        top = f"{p}*{_wrap(ns)}"
    ds = str(pd)
    if ds == "1":
        return top if q == 1 else f"{top}/{q}"
    if q == 1:
        return f"{top}/{ds if '*' not in ds and ' ' not in ds else '(' + ds + ')'}"
    return f"{top}/({q}*{_wrap(ds)})"


# ---------------------------------------------------------------- text

def _cls_line(cl: dict):
    parts = []
    for k in ("s", "p", "r", "q", "s1", "p1", "s2", "p2", "alpha"):
        v = cl.get(k)
        if v is not None:
            parts.append(f"{k}={v}")
    u = cl.get("uTable") or {}
    if u:
        parts.append("u=[" + ",".join(f"{k}:{v}" for k, v in u.items()) + "]")
    g = cl.get("genericGate")
    if g is not None:
        parts.append("gate=" + ("generic" if g else "degenerate"))
    return " ".join(parts) if parts else "(none)"


def _mu_str(mu, names):
    return "*".join(f"{nm}^{e}" if e > 1 else nm for nm, e in zip(names, mu) if e)


def emit_text(r: Report) -> str:
    out = [f"nfc report ({r.command})",
           f"mode: {r.mode}  degree: {r.N}" + (f"  parameter degree: {r.M}" if r.mode == "parametric" else ""),
           f"level: {r.level}" + (f"  case: {r.case}" if r.case else "")]
    if r.verdict:
        out.append(f"verdict: {r.verdict}")
    out.append(f"classification: {_cls_line(r.classification)}")
    if r.terms:
        out.append("normal form:")
        for t in r.terms:
            mu = _mu_str(t.mu, r.muNames)
            out.append(f"  {t.label} {t.name()}" + (f" {mu}" if mu else "") + f" : {t.label} = {format_coeff(t.coeff)}")
    if r.digest:
        st = ", ".join(f"{s['name']}: {s['steps']} steps" for s in r.digest.get("stages", []))
        out.append(f"generators: {st or 'none'}  sha256 {r.digest.get('sha256', '')[:16]}")
    for c in r.caveats:
        out.append(f"caveat: {c}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- json

def _rat(x):
    x = mpq(x)
    return f"{x.numerator}/{x.denominator}"


def _poly_json(p: Poly):
    return [{"exps": list(e), "re": _rat(c.re), "im": _rat(c.im)} for e, c in p.items()]


def _poly_from_json(table, items):
    terms = {}
    for it in items:
        terms[table.pack(tuple(it["exps"]))] = (mpq(it["re"]), mpq(it["im"]))
    return Poly(table, terms)


def report_to_dict(r: Report):
    return {
        "version": FORMAT_VERSION,
        "command": r.command,
        "mode": r.mode,
        "N": r.N,
        "M": r.M,
        "level": r.level,
        "case": r.case,
        "verdict": r.verdict,
        "classification": r.classification,
        "symbols": list(r.symbols),
        "parameters": list(r.muNames),
        "terms": [{"basis": t.basis, "m": t.m, "n": t.n, "mu": list(t.mu), "label": t.label,
                   "coeff": {"num": _poly_json(t.coeff.num), "den": _poly_json(t.coeff.den)},
                   "text": format_coeff(t.coeff)} for t in r.terms],
        "digest": r.digest,
        "caveats": list(r.caveats),
    }


def emit_json(r: Report) -> str:
    return json.dumps(report_to_dict(r), indent=2, sort_keys=True) + "\n"


def report_from_json(text) -> Report:
    d = json.loads(text)
    if d.get("version") != FORMAT_VERSION:
        raise ValueError(f"unsupported report version {d.get('version')!r}")
    table = SymbolTable(d["symbols"])
    terms = []
    for t in d["terms"]:
        num = _poly_from_json(table, t["coeff"]["num"])
        den = _poly_from_json(table, t["coeff"]["den"])
        terms.append(Term(t["basis"], t["m"], t["n"], tuple(t["mu"]), t["label"], RatFn(num, den, _canon=True)))
    return Report(d["command"], d["mode"], d["N"], d["M"], d["level"], d["case"], d["classification"],
                  tuple(d["symbols"]), tuple(d["parameters"]), terms, d["digest"], list(d["caveats"]),
                  d["verdict"])


# ---------------------------------------------------------------- latex

_GREEK = {"alpha", "beta", "gamma", "delta", "epsilon", "lambda", "mu", "nu", "omega", "sigma", "tau", "theta", "kappa"}


def tex_symbol(name):
    m = re.fullmatch(r"([A-Za-z]+?)_?(\d+)", name)
    base, idx = (m.group(1), m.group(2)) if m else (name, "")
    if base in _GREEK:
        base = "\\" + base
    elif len(base) > 1:
        base = f"\\mathrm{{{base}}}"
    return f"{base}_{{{idx}}}" if idx else base


def _tex_rat(x, lead):
    x = mpq(x)
    p, q = int(x.numerator), int(x.denominator)
    sign = "-" if p < 0 else ("" if lead else "+")
    p = abs(p)
    body = str(p) if q == 1 else f"\\frac{{{p}}}{{{q}}}"
    return sign, body, (p == 1 and q == 1)


def tex_poly(p: Poly):
    if p.is_zero():
        return "0"
    names = p.table.names
    out = []
    for i, (exps, c) in enumerate(p.items()):
        mono = " ".join(tex_symbol(nm) + (f"^{{{e}}}" if e > 1 else "") for nm, e in zip(names, exps) if e)
        if c.im:
            coef = f"({_rat(c.re)} + {_rat(c.im)} i)"
            out.append(("" if i == 0 else "+ ") + coef + (" " + mono if mono else ""))
            continue
        sign, body, unit = _tex_rat(c.re, i == 0)
        if mono and unit:
            body = ""
        term = (body + " " + mono).strip()
        out.append((sign + " " if sign and i else sign) + term)
    return " ".join(out)


def tex_coeff(c: RatFn):
    """Rational content pulled out: (a5 + a9)/2 becomes \\frac{a_{5} + a_{9}}{2}."""
    if c.is_zero():
        return "0"
    cn, pn = _primitive(c.num)
    cd, pd = _primitive(c.den)
    if any(im for _, im in list(pn.terms.values()) + list(pd.terms.values())):
        return tex_poly(c.num) if c.den.is_const() else f"\\frac{{{tex_poly(c.num)}}}{{{tex_poly(c.den)}}}"
    k = cn / cd
    p, q = int(k.numerator), int(k.denominator)
    sign = "-" if p < 0 else ""
    p = abs(p)
    top = tex_poly(pn)
    if top == "1":
        top = str(p)
    elif p != 1:
        top = f"{p} \\left({top}\\right)" if len(pn) > 1 else f"{p} {top}"
    bottom = tex_poly(pd)
    if bottom == "1":
        bottom = str(q)
    elif q != 1:
        bottom = f"{q} \\left({bottom}\\right)" if len(pd) > 1 else f"{q} {bottom}"
    if bottom == "1":
        return sign + top
    return f"{sign}\\frac{{{top}}}{{{bottom}}}"


def tex_label(label):
    return label.replace("∞", "\\infty")


def emit_latex(r: Report) -> str:
    out = [f"% nfc report ({r.command}), mode {r.mode}, degree {r.N}" + (f", parameter degree {r.M}" if r.mode == "parametric" else ""),
           f"% level {r.level}" + (f", case {r.case}" if r.case else "")]
    if r.verdict:
        out.append(f"% verdict: {r.verdict}")
    out.append(f"% classification: {_cls_line(r.classification)}")
    rows = []
    for t in r.terms:
        mu = " ".join(tex_symbol(nm) + (f"^{{{e}}}" if e > 1 else "") for nm, e in zip(r.muNames, t.mu) if e)
        basis = f"{_BASIS_TEX[t.basis]}_{{{t.m},{t.n}}}"
        rows.append(f"  {tex_label(t.label)} &= {tex_coeff(t.coeff)} && {basis}{(' ' + mu) if mu else ''}")
    if rows:
        out += ["\\begin{align*}", " \\\\\n".join(rows), "\\end{align*}"]
    for c in r.caveats:
        out.append(f"% caveat: {c}")
    return "\n".join(out) + "\n"


def emit(r: Report, fmt="text") -> bytes:
    if fmt == "text":
        s = emit_text(r)
    elif fmt == "json":
        s = emit_json(r)
    elif fmt == "latex":
        s = emit_latex(r)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return s.encode("utf-8")
