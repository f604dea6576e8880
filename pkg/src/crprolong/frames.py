"""Polynomial realizations of the CR models.

A rigid model is the graph w_j - wbar_j = 2i·phi_j(z, zbar) with real
weighted-homogeneous defining polynomials; its tangential CR field on the
intrinsic chart (z, zbar, u_1..u_k) is d/dz + i·sum_j (dphi_j/dz) d/du_j.
Models may instead carry an explicit CR field (used for lengths that have
no rigid polynomial representative): the growth and symbol machinery only
ever consumes the field.

The growth vector is computed by evaluating the basis bracket words of
the field and its conjugate at the origin; total nondegeneracy means the
filtration is as free as possible below the minimal length and fills the
tangent space exactly there.  When it holds, the length-rho evaluation
kernel is the model-induced top-layer quotient and the symbol algebra is
rebuilt from it through the same constructor as every other quotient.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .bch import left_invariant_frame
from .exact import Echelon, Matrix, QI, QI_ZERO, as_qi, kernel_basis
from .freelie import cumulative_dim, hall_basis, hall_rewrite, min_length_for_codim, standard_factorization
from .liealg import QuotientSpec, SymbolAlgebra, build_symbol_algebra, real_form
from .poly import Poly, PolyVectorField, rigid_chart, vf_bracket

__all__ = [
    "ModelSpec",
    "Filtration",
    "NotRigid",
    "NotTotallyNondegenerate",
    "rigid_model",
    "field_model",
    "cr_field",
    "tangential_cr_field",
    "growth_and_nondegeneracy",
    "symbol_from_frame",
    "builtin_catalog",
    "catalog_to_json",
    "load_catalog",
]


class NotRigid(ValueError):
    """The model is given by an explicit field, not by defining polynomials."""


class NotTotallyNondegenerate(ValueError):
    """The model's filtration is not as free as the definition demands."""


@dataclass(frozen=True)
class ModelSpec:
    """A catalog entry: either defining polynomials or an explicit CR field."""

    model_id: str
    codim: int
    length: int
    phis: tuple = ()
    weights: tuple = ()
    cr: PolyVectorField = None
    provenance: str = ""

    @property
    def rigid(self) -> bool:
        return self.cr is None

    def defining_equations(self):
        """Human-readable graph equations w_j - wbar_j = 2i·phi_j."""
        if not self.rigid:
            raise NotRigid(f"model {self.model_id} is given by an explicit field")
        out = []
        for j, phi in enumerate(self.phis, start=1):
            out.append(f"w{j} - w̄{j} = 2i ({phi.pretty(['z', 'z̄'])})")
        return out

    def to_json_dict(self) -> dict:
        out = {
            "id": self.model_id,
            "k": self.codim,
            "rho": self.length,
            "provenance": self.provenance,
        }
        if self.rigid:
            out["defining"] = {
                "type": "rigid",
                "phi": [p.to_json_dict() for p in self.phis],
                "weights": list(self.weights),
            }
        else:
            out["defining"] = {"type": "field", "cr": self.cr.to_json_dict()}
        return out

    @classmethod
    def from_json_dict(cls, obj: dict) -> "ModelSpec":
        d = obj["defining"]
        if d["type"] == "rigid":
            phis = [Poly.from_json_dict(p, 2) for p in d["phi"]]
            return rigid_model(obj["id"], obj["k"], phis, provenance=obj.get("provenance", ""))
        cr = PolyVectorField.from_json_dict(d["cr"])
        return field_model(obj["id"], obj["k"], cr, provenance=obj.get("provenance", ""))


def _phi_is_real(phi: Poly) -> bool:
    # real-valued as a polynomial in (z, zbar): equals its formal conjugate
    return phi == phi.permuted((1, 0), conj=True)


def rigid_model(model_id: str, k: int, phis, provenance: str = "") -> ModelSpec:
    """Validated rigid model Im w_j = phi_j(z, zbar).

    Checks: each phi real-valued and weighted-homogeneous (z, zbar of
    weight one), weights nondecreasing, and the top weight equal to the
    minimal length for this codimension.
    """
    phis = tuple(phis)
    if len(phis) != k:
        raise ValueError(f"need {k} defining polynomials, got {len(phis)}")
    weights = []
    for j, phi in enumerate(phis, start=1):
        if phi.nvars != 2:
            raise ValueError("defining polynomials live in (z, zbar)")
        if phi.is_zero():
            raise ValueError(f"phi_{j} is zero")
        if not _phi_is_real(phi):
            raise ValueError(f"phi_{j} is not real-valued")
        degs = sorted({sum(e) for e in phi.terms})
        if len(degs) != 1:
            raise ValueError(f"phi_{j} is not weighted homogeneous")
        weights.append(degs[0])
    if list(weights) != sorted(weights):
        raise ValueError("weights must be nondecreasing")
    rho = min_length_for_codim(k)
    if weights[-1] != rho:
        raise ValueError(f"top weight {weights[-1]} must equal the length {rho}")
    return ModelSpec(model_id, k, rho, phis=phis, weights=tuple(weights), provenance=provenance)


def field_model(model_id: str, k: int, cr: PolyVectorField, provenance: str = "") -> ModelSpec:
    if cr.chart.nvars != 2 + k:
        raise ValueError("explicit field must live on a (2+k)-dimensional chart")
    return ModelSpec(
        model_id, k, min_length_for_codim(k), cr=cr, provenance=provenance
    )


def tangential_cr_field(model: ModelSpec) -> PolyVectorField:
    """Generator of the holomorphic tangent bundle of a rigid model.

    On the intrinsic chart: d/dz + i·sum_j (dphi_j/dz)·d/du_j; the
    conjugate generator is the formal conjugate.  Tangency L(w_j - wbar_j
    - 2i·phi_j) = 0 holds by construction and is re-checked exactly.
    """
    if not model.rigid:
        raise NotRigid(f"model {model.model_id} carries an explicit field")
    k = model.codim
    chart = rigid_chart(k)
    n = chart.nvars
    comps = [Poly.const(n, 1), Poly.zero(n)]
    for phi in model.phis:
        a = phi.diff(0).extend_vars(n).scale(QI(0, 1))
        comps.append(a)
    L = PolyVectorField(chart, comps)
    # tangency re-check: with u_j = Re w_j the ambient condition reduces to
    # component_j(L) = i·dphi_j/dz
    for j, phi in enumerate(model.phis):
        if L.comps[2 + j] != phi.diff(0).extend_vars(n).scale(QI(0, 1)):
            raise AssertionError("tangency solve failed")
    return L


def cr_field(model: ModelSpec) -> PolyVectorField:
    return model.cr if not model.rigid else tangential_cr_field(model)


@dataclass(frozen=True)
class Filtration:
    """Origin values of the bracket filtration: growth vector and spans."""

    growth: tuple
    spans: tuple = field(repr=False, default=())
    word_values: dict = field(repr=False, default=None)

    def stabilizes_at(self, full_dim: int):
        for i, g in enumerate(self.growth, start=1):
            if g == full_dim:
                return i
        return None


def _word_fields(L, Lb, max_length):
    """Vector fields of all basis bracket words of (L, Lbar) up to a length."""
    basis = hall_basis(max_length)
    out = {}
    for w in basis.words:
        if w.length == 1:
            out[w.word] = L if w.word == (1,) else Lb
        else:
            u, v = standard_factorization(w.word)
            out[w.word] = vf_bracket(out[u], out[v])
    return out


def growth_and_nondegeneracy(model: ModelSpec):
    """(Filtration, verdict): verdict is total nondegeneracy at the origin.

    Totally nondegenerate means: each D_l for l below the minimal length
    rho(k) has the full free dimension, and D_rho is the whole complexified
    tangent space.
    """
    k = model.codim
    rho = min_length_for_codim(k)
    L = cr_field(model)
    Lb = L.conj()
    full_dim = 2 + k
    fields = _word_fields(L, Lb, rho)
    values = {w: f.value_at_origin() for w, f in fields.items()}
    growth = []
    spans = []
    vectors = []
    verdict = True
    for ell in range(1, rho + 1):
        vectors.extend(values[w] for w in values if len(w) == ell)
        ech = Echelon(list(vectors), full_dim)
        growth.append(ech.rank)
        spans.append(ech)
        expected = cumulative_dim(ell) if ell < rho else full_dim
        if ech.rank != expected:
            verdict = False
    filt = Filtration(tuple(growth), tuple(spans), values)
    return filt, verdict


def symbol_from_frame(model: ModelSpec) -> SymbolAlgebra:
    """Model-induced symbol algebra, as a quotient spec fed to the builder.

    The kernel of "evaluate length-rho words at the origin modulo lower
    lengths" is exactly the top-layer subspace the model quotients away.
    The induced constants are cross-checked against the vector-field
    brackets at the origin before returning.
    """
    filt, ok = growth_and_nondegeneracy(model)
    if not ok:
        raise NotTotallyNondegenerate(
            f"model {model.model_id} has growth {filt.growth}, not totally nondegenerate"
        )
    k = model.codim
    rho = min_length_for_codim(k)
    full_dim = 2 + k
    values = filt.word_values
    low_words = [w for w in hall_basis(rho).words if w.length < rho]
    top_words = [w for w in hall_basis(rho).words if w.length == rho]
    n_low, n_top = len(low_words), len(top_words)
    # kernel of [low values | top values]; rows of the quotient are the
    # top-coordinate parts of kernel vectors
    cols = [values[w.word] for w in low_words] + [values[w.word] for w in top_words]
    big = Matrix.from_columns(cols)
    rows = []
    for vec in kernel_basis(big):
        rows.append(tuple(vec[n_low:]))
    reducer = Echelon([list(r) for r in rows], n_top)
    need = n_top - (full_dim - cumulative_dim(rho - 1))
    if reducer.rank != need:
        raise AssertionError("frame quotient has unexpected dimension")
    spec = QuotientSpec(kind="frame", rows=tuple(tuple(r) for r in reducer.rows), provenance=f"frame:{model.model_id}")
    symbol = build_symbol_algebra(k, spec)
    _check_frame_constants(symbol, values, full_dim, filt.spans[rho - 2])
    return symbol


def _check_frame_constants(symbol: SymbolAlgebra, values, full_dim, lower_span):
    """Origin values must satisfy the quotient's structure constants.

    Top-degree brackets live in D_rho / D_(rho-1) at the origin, so the
    two evaluations are compared modulo the lower filtration span.
    """
    for i, wi in enumerate(symbol.words):
        for j in range(i + 1, symbol.dim):
            wj = symbol.words[j]
            if wi.length + wj.length != symbol.length:
                continue
            lhs = [QI_ZERO] * full_dim
            raw = hall_rewrite(wi, wj, max_length=symbol.length, truncate=True)
            for w, c in raw.items():
                val = values[w.word]
                lhs = [x + as_qi(c) * v for x, v in zip(lhs, val)]
            rhs = [QI_ZERO] * full_dim
            for kdx, c in symbol.algebra.bracket_basis(i, j).items():
                val = values[symbol.words[kdx].word]
                rhs = [x + c * v for x, v in zip(rhs, val)]
            diff = [x - y for x, y in zip(lhs, rhs)]
            if not lower_span.contains(diff):
                raise AssertionError(f"frame constants disagree at ({wi}, {wj})")


def _phi(terms) -> Poly:
    return Poly(2, terms)


def _frame_realized_model(model_id: str, k: int) -> ModelSpec:
    """Explicit-field entry: CR field of the default symbol algebra's group.

    The left-invariant frame realizes the realified default symbol algebra
    on its simply connected group in exponential coordinates; the CR field
    is (X - iY)/2 for the canonical degree -1 pair (x, y).
    """
    rf = real_form(build_symbol_algebra(k).algebra)
    frame = left_invariant_frame(rf.algebra)
    L = (frame[0] + frame[1].scale(QI(0, -1))).scale(QI("1/2"))
    return field_model(
        model_id,
        k,
        L,
        provenance="left-invariant frame of the default symbol algebra (no rigid "
        "polynomial representative is available at this length)",
    )


def builtin_catalog() -> dict:
    """The shipped desk-scale models, keyed by id.

    Rigid entries carry their defining polynomials phi_j; the two length-5
    entries are explicit-field realizations.  Every entry passes
    growth_and_nondegeneracy (enforced by the catalog test suite).
    """
    catalog = {}

    def add(m):
        catalog[m.model_id] = m

    # length 2: Im w = z·zbar
    add(rigid_model("heisenberg", 1, [_phi({(1, 1): 1})], provenance="w - wbar = 2i z zbar"))
    # length 3 entries: Im w2 = z^2 zbar + z zbar^2 (and its partner for k=3)
    cubic_a = _phi({(2, 1): 1, (1, 2): 1})
    cubic_b = _phi({(2, 1): QI(0, -1), (1, 2): QI(0, 1)})
    add(rigid_model("cubic2", 2, [_phi({(1, 1): 1}), cubic_a], provenance="derived; validated by the growth check"))
    add(rigid_model("cubic3", 3, [_phi({(1, 1): 1}), cubic_a, cubic_b], provenance="derived; validated by the growth check"))
    # length 4 entries
    quartic_a = _phi({(3, 1): 1, (1, 3): 1})
    quartic_b = _phi({(3, 1): QI(0, -1), (1, 3): QI(0, 1)})
    quartic_c = _phi({(2, 2): 1})
    add(
        rigid_model(
            "quartic4",
            4,
            [_phi({(1, 1): 1}), cubic_a, cubic_b, quartic_c],
            provenance="derived; validated by the growth check",
        )
    )
    add(
        rigid_model(
            "quartic5",
            5,
            [_phi({(1, 1): 1}), cubic_a, cubic_b, quartic_a, quartic_b],
            provenance="derived; validated by the growth check",
        )
    )
    add(
        rigid_model(
            "quartic6",
            6,
            [_phi({(1, 1): 1}), cubic_a, cubic_b, quartic_a, quartic_b, quartic_c],
            provenance="derived; validated by the growth check",
        )
    )
    # length 5 entries via the explicit-field escape hatch
    add(_frame_realized_model("quintic7", 7))
    add(_frame_realized_model("quintic12", 12))
    return catalog


def catalog_to_json(catalog: dict) -> str:
    entries = [catalog[key].to_json_dict() for key in sorted(catalog)]
    return json.dumps(entries, indent=2)


def load_catalog(text: str) -> dict:
    entries = json.loads(text)
    out = {}
    for obj in entries:
        m = ModelSpec.from_json_dict(obj)
        out[m.model_id] = m
    return out
