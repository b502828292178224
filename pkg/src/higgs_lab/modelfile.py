"""JSON model files: exact rationals as "num/den" strings, polynomials as arrays.

A file holds one ambient block and a list of objects, each either a chain
spec (realized on load) or an explicit model with its declared subobject
family.  Loading validates every object; a file whose objects fail
validation is rejected as input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from .chern import (
    KahlerData,
    NumericalSheafData,
    SurfaceChernInput,
)
from .hilbert import HilbertPolynomial, format_rational, parse_rational
from .model import (
    HiggsChainSpec,
    HiggsObjectModel,
    SubobjectEntry,
    realize,
    validate,
)


class ParseError(ValueError):
    """The file is not a well-formed model file."""


@dataclass(frozen=True)
class LoadedObject:
    """One object from a file: the model plus file-level metadata."""

    model: HiggsObjectModel
    source: str  # "chain" or "model"
    chain: Optional[HiggsChainSpec] = None
    locally_free: bool = False
    surface_chern: Optional[SurfaceChernInput] = None


@dataclass(frozen=True)
class ModelFile:
    ambient: KahlerData
    objects: tuple[LoadedObject, ...]
    tasks: tuple[str, ...] = ()


def _rat(value, where: str) -> Fraction:
    try:
        return parse_rational(value)
    except (ValueError, TypeError, AttributeError):
        raise ParseError(f"{where}: expected a rational 'num/den', got {value!r}")


def _poly(value, where: str) -> HilbertPolynomial:
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a coefficient array")
    return HilbertPolynomial(_rat(c, where) for c in value)


def kahler_from_json(block: dict) -> KahlerData:
    if not isinstance(block, dict) or "n" not in block:
        raise ParseError("ambient: expected an object with a dimension 'n'")
    n = block["n"]
    try:
        if n == 1:
            return KahlerData.curve(int(block["genus"]), int(block["degH"]))
        todd = block.get("todd")
        return KahlerData(
            n=int(n),
            hn=_rat(block["hn"], "ambient.hn"),
            c1x_h=_rat(block["c1X_H"], "ambient.c1X_H"),
            todd=tuple(_rat(t, "ambient.todd") for t in todd) if todd else None,
        )
    except ParseError:
        raise
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"ambient: {exc}")


def kahler_to_json(kd: KahlerData) -> dict:
    if kd.n == 1:
        return {"n": 1, "genus": kd.genus, "degH": int(kd.hn)}
    out = {"n": kd.n, "hn": format_rational(kd.hn), "c1X_H": format_rational(kd.c1x_h)}
    if kd.todd is not None:
        out["todd"] = [format_rational(t) for t in kd.todd]
    return out


def sheaf_from_json(block: dict, where: str) -> NumericalSheafData:
    try:
        return NumericalSheafData(
            rank=int(block["rank"]),
            deg_h=_rat(block["degH"], f"{where}.degH"),
            chi=_poly(block["chi"], f"{where}.chi"),
            torsion_free=bool(block.get("torsion_free", True)),
        )
    except ParseError:
        raise
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"{where}: {exc}")


def sheaf_to_json(s: NumericalSheafData) -> dict:
    return {
        "rank": s.rank,
        "degH": format_rational(s.deg_h),
        "chi": s.chi.to_strings(),
        "torsion_free": s.torsion_free,
    }


def _entry_from_json(block: dict) -> SubobjectEntry:
    try:
        eid = block["id"]
        torsion = block.get("quotient_torsion_part")
        return SubobjectEntry(
            id=str(eid),
            data=sheaf_from_json(block["data"], f"{eid}.data"),
            quotient=sheaf_from_json(block["quotient"], f"{eid}.quotient"),
            quotient_torsion_part=(
                sheaf_from_json(torsion, f"{eid}.torsion") if torsion else None
            ),
            contains=frozenset(str(i) for i in block.get("contains", [])),
        )
    except ParseError:
        raise
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"subobject: {exc}")


def entry_to_json(e: SubobjectEntry) -> dict:
    out = {
        "id": e.id,
        "data": sheaf_to_json(e.data),
        "quotient": sheaf_to_json(e.quotient),
        "contains": sorted(e.contains),
    }
    if e.quotient_torsion_part is not None:
        out["quotient_torsion_part"] = sheaf_to_json(e.quotient_torsion_part)
    return out


def chain_from_json(block: dict, ambient: KahlerData) -> HiggsChainSpec:
    try:
        return HiggsChainSpec(
            ambient=ambient,
            summand_degrees=tuple(int(d) for d in block["degrees"]),
            arrows=frozenset(
                (int(i), int(j)) for i, j in block.get("arrows", [])
            ),
        )
    except ParseError:
        raise
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"chain {block.get('id', '?')}: {exc}")


def _object_from_json(block: dict, ambient: KahlerData) -> LoadedObject:
    if not isinstance(block, dict):
        raise ParseError("objects: each object must be a JSON object")
    kind = block.get("type", "model")
    oid = str(block.get("id", "E"))
    locally_free = bool(block.get("locally_free", False))
    chern_block = block.get("surface_chern")
    surface_chern = None
    if chern_block is not None:
        try:
            surface_chern = SurfaceChernInput(
                c1h=_rat(chern_block["c1H"], f"{oid}.c1H"),
                ch2=_rat(chern_block["ch2"], f"{oid}.ch2"),
                c1c1x=_rat(chern_block["c1c1X"], f"{oid}.c1c1X"),
                c1sq=_rat(chern_block["c1sq"], f"{oid}.c1sq"),
                c2int=_rat(chern_block["c2int"], f"{oid}.c2int"),
            )
        except ParseError:
            raise
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"{oid}.surface_chern: {exc}")
    if kind == "chain":
        spec = chain_from_json(block, ambient)
        try:
            model = realize(spec, object_id=oid)
        except ValueError as exc:  # infeasible arrows and the like
            raise ParseError(f"chain {oid}: {exc}")
        return LoadedObject(model, "chain", chain=spec, locally_free=True)
    if kind == "model":
        try:
            model = HiggsObjectModel(
                id=oid,
                ambient=ambient,
                data=sheaf_from_json(block["data"], f"{oid}.data"),
                subobjects=tuple(
                    _entry_from_json(b) for b in block.get("subobjects", [])
                ),
                family_complete=bool(block.get("family_complete", False)),
            )
        except ParseError:
            raise
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"object {oid}: {exc}")
        return LoadedObject(
            model, "model", locally_free=locally_free, surface_chern=surface_chern
        )
    raise ParseError(f"object {oid}: unknown type {kind!r}")


def loads(text: str) -> ModelFile:
    """Parse and validate a model file; any violation rejects the file."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}")
    if not isinstance(doc, dict):
        raise ParseError("top level must be a JSON object")
    if "ambient" not in doc or "objects" not in doc:
        raise ParseError("a model file needs 'ambient' and 'objects'")
    ambient = kahler_from_json(doc["ambient"])
    if not isinstance(doc["objects"], list):
        raise ParseError("'objects' must be a list")
    objects = []
    seen = set()
    for block in doc["objects"]:
        loaded = _object_from_json(block, ambient)
        if loaded.model.id in seen:
            raise ParseError(f"duplicate object id {loaded.model.id!r}")
        seen.add(loaded.model.id)
        objects.append(loaded)
    for loaded in objects:
        problems = validate(loaded.model)
        if problems:
            raise ParseError(
                f"object {loaded.model.id} fails validation: "
                + "; ".join(str(v) for v in problems)
            )
    tasks = tuple(str(t) for t in doc.get("tasks", []))
    return ModelFile(ambient=ambient, objects=tuple(objects), tasks=tasks)


def load(path: Union[str, Path]) -> ModelFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")
    return loads(text)


def model_to_json(obj: LoadedObject) -> dict:
    """Serialize an object back to its file form (always the explicit model form)."""
    m = obj.model
    out = {
        "type": "model",
        "id": m.id,
        "data": sheaf_to_json(m.data),
        "subobjects": [entry_to_json(e) for e in m.subobjects],
        "family_complete": m.family_complete,
    }
    if obj.locally_free:
        out["locally_free"] = True
    if obj.surface_chern is not None:
        sc = obj.surface_chern
        out["surface_chern"] = {
            "c1H": format_rational(sc.c1h),
            "ch2": format_rational(sc.ch2),
            "c1c1X": format_rational(sc.c1c1x),
            "c1sq": format_rational(sc.c1sq),
            "c2int": format_rational(sc.c2int),
        }
    return out
