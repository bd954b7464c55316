"""
HTTP surface for the asymptotic-Hecke computations.

Every endpoint is a pure computation over the request body, so responses are
deterministic and the service can run with any number of workers.  The CLI
talks to the same app in-process through an ASGI transport; a standalone
server is ``uvicorn asymhecke.service:app``.

Error mapping: 400 for unparseable words or symbols, 409 when the requested
cutoff is too small to certify anything, 424 when a windowed series action
fails to stabilize at the cutoff.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Literal

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .coeffring import Laurent, TruncSeries
from .jalg import (
    gamma_table, phi_inverse, tw_coefficient_exact, tw_in_cprime, tw_in_t,
)
from .plane import (
    StabilizationError, act_t, orbit_coefficients, parse_symbol,
    schwartz_check, t_action,
)
from .verification import run_suite
from .weyl import WeylElt, parse_word, word

app = FastAPI(title="asymhecke", version=__version__,
              description="Exact computations in the rank-one affine Hecke "
                          "algebra and its asymptotic companion.")


class ExpandRequest(BaseModel):
    word: str = Field(description="alternating word over '0'/'1'; nonempty")
    basis: Literal["T", "C", "Cprime"] = "T"
    cutoff: int = Field(default=16, ge=1)
    precision: int = Field(default=32, ge=1)
    q: int | None = Field(default=None, ge=2,
                          description="optional numeric specialization")


class TermOut(BaseModel):
    w: str
    coeff: dict[str, object] | None = None
    value: str | None = None
    approx: float | None = None


class ExpandResponse(BaseModel):
    element: str
    basis: str
    cutoff: int
    exact_to: int
    terms: list[TermOut]
    note: str | None = None


class ActRequest(BaseModel):
    t: str | None = Field(default=None, description="asymptotic-basis word")
    T: str | None = Field(default=None, description="standard-basis word")
    on: str = Field(description="plane symbol, e.g. phibar(0) or psi(-2)")
    cutoff: int = Field(default=20, ge=1)
    floor: int = Field(default=-2, le=0,
                       description="v-exponent certification floor")


class ActResponse(BaseModel):
    result: dict[str, object]
    pretty: str
    orbit: dict[str, object] | None = None
    stabilized_at: int | None = None


class VerifyRequest(BaseModel):
    suite: Literal["images", "expansion-signs", "plane", "gamma", "all"] = "all"
    cutoff: int = Field(default=16, ge=2)
    precision: int = Field(default=32, ge=2)


class CheckOut(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class VerifyResponse(BaseModel):
    suite: str
    cutoff: int
    precision: int
    passed: bool
    checks: list[CheckOut]


class GammaTableRequest(BaseModel):
    max_length: int = Field(default=4, ge=0, le=8)


class GammaEntry(BaseModel):
    x: str
    y: str
    z: str
    gamma: int


class GammaTableResponse(BaseModel):
    max_length: int
    entries: list[GammaEntry]


class SchwartzRequest(BaseModel):
    word: str
    q0: int = Field(default=3, ge=2)
    n_max: int = Field(default=30, ge=1)


@app.get("/")
def info() -> dict[str, str]:
    return {"name": "asymhecke", "version": __version__}


def _parse_or_400(text: str) -> WeylElt:
    try:
        return parse_word(text)
    except ValueError as err:
        raise HTTPException(status_code=400, detail=str(err))


def _coeff_json(c: "Laurent | TruncSeries") -> dict[str, object]:
    return c.to_json()


def _split_eval(c: Laurent, q0: int) -> tuple[Fraction, Fraction]:
    """Value as a + b*sqrt(q0): exact rational pair split by v-parity."""
    a = Fraction(0)
    b = Fraction(0)
    for e, coeff in c.terms.items():
        if e % 2 == 0:
            a += coeff * Fraction(q0) ** (e // 2)
        else:
            b += coeff * Fraction(q0) ** ((e - 1) // 2)
    return a, b


def _render_value(a: Fraction, b: Fraction, q0: int) -> tuple[str, float]:
    approx = float(a) + float(b) * math.sqrt(q0)
    if b == 0:
        return str(a), approx
    if a == 0:
        return f"{b}*sqrt({q0})", approx
    return f"{a} + {b}*sqrt({q0})", approx


@app.post("/expand", response_model=ExpandResponse)
def expand(req: ExpandRequest) -> ExpandResponse:
    if req.word == "":
        raise HTTPException(status_code=400, detail="empty word: expansion "
                            "is defined for nontrivial t-elements")
    y = _parse_or_400(req.word)
    if req.cutoff < y.length + 1:
        raise HTTPException(
            status_code=409,
            detail=f"cutoff {req.cutoff} certifies nothing for a length-"
                   f"{y.length} word; need at least {y.length + 1}")
    if req.basis == "T":
        elt = tw_in_t(y, req.cutoff, req.precision)
    elif req.basis == "C":
        elt = phi_inverse(y, req.cutoff, req.precision)
    else:
        elt, _report = tw_in_cprime(y, req.cutoff)
    terms: list[TermOut] = []
    for x in elt.support():
        c = elt.coeff(x)
        if req.q is None:
            terms.append(TermOut(w=word(x), coeff=_coeff_json(c)))
        else:
            if req.basis == "T":
                val = tw_coefficient_exact(y, x, req.q)
                scale = Fraction(req.q) ** ((y.length - 1) // 2) if y.length else Fraction(1)
                vv = val * scale
                odd = y.length and (y.length - 1) % 2
                text, approx = _render_value(Fraction(0) if odd else vv,
                                             vv if odd else Fraction(0), req.q)
            else:
                known = c if isinstance(c, Laurent) else c.known_part()
                a, b = _split_eval(known, req.q)
                text, approx = _render_value(a, b, req.q)
            terms.append(TermOut(w=word(x), value=text, approx=approx))
    note = None
    if req.q is not None and req.basis == "T":
        note = "values include the common factor q^((l-1)/2) restored"
    return ExpandResponse(element=f"t_{req.word}", basis=req.basis,
                          cutoff=req.cutoff, exact_to=elt.exact_to,
                          terms=terms, note=note)


@app.post("/act", response_model=ActResponse)
def act(req: ActRequest) -> ActResponse:
    if (req.t is None) == (req.T is None):
        raise HTTPException(status_code=400,
                            detail="provide exactly one of 't' or 'T'")
    try:
        f = parse_symbol(req.on)
    except ValueError as err:
        raise HTTPException(status_code=400, detail=str(err))
    if req.T is not None:
        w = _parse_or_400(req.T)
        result = act_t(w, f)
        settled = None
    else:
        y = _parse_or_400(req.t)
        try:
            action = t_action(y, f, cutoff=req.cutoff, floor=req.floor)
        except StabilizationError as err:
            raise HTTPException(status_code=424, detail=str(err))
        result = action.result
        settled = max(action.report.settled_at.values(), default=0)
    orbit = None
    try:
        orbit = {f"{kind}({n})": c.to_json()
                 for (kind, n), c in sorted(orbit_coefficients(result).items(),
                                            key=lambda kv: (kv[0][1], kv[0][0]))}
    except ValueError:
        pass  # semi-infinite orbit support; closure rendering stands alone
    return ActResponse(result=result.to_json(), pretty=result.pretty(),
                       orbit=orbit, stabilized_at=settled)


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest) -> VerifyResponse:
    checks = run_suite(req.suite, req.cutoff, req.precision)
    return VerifyResponse(
        suite=req.suite, cutoff=req.cutoff, precision=req.precision,
        passed=all(c.passed for c in checks),
        checks=[CheckOut(name=c.name, passed=c.passed, detail=c.detail)
                for c in checks])


@app.post("/gamma-table", response_model=GammaTableResponse)
def gamma_table_endpoint(req: GammaTableRequest) -> GammaTableResponse:
    entries = [GammaEntry(x=word(x), y=word(y), z=word(z), gamma=g)
               for x, y, z, g in gamma_table(req.max_length)]
    return GammaTableResponse(max_length=req.max_length, entries=entries)


@app.post("/schwartz")
def schwartz(req: SchwartzRequest) -> dict[str, object]:
    y = _parse_or_400(req.word)
    return schwartz_check(y, req.q0, req.n_max).to_json()
