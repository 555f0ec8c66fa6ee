"""JSON serialization: surfaces (bit-exact round trip), common unfoldings,
reports and run manifests."""

from __future__ import annotations

import json
import os
import tempfile

from .errors import InvalidInput
from .geom import PlanarPolygon
from .surface import Face, Surface, build_surface


def surface_to_dict(surface: Surface) -> dict:
    return surface.as_dict()


def surface_from_dict(d: dict, closed: bool = True) -> Surface:
    faces = [Face(int(f["id"]), tuple(tuple(map(float, p)) for p in f["vertices"]))
             for f in d["faces"]]
    gluings = {}
    for quad in d.get("gluings", []):
        fa, ea, fb, eb = quad
        gluings[(int(fa), int(ea))] = (int(fb), int(eb))
    labels = {name: tuple(ref) for name, ref in d.get("labels", {}).items()}
    if closed:
        return build_surface(faces, gluings, labels=labels)
    return Surface(faces, gluings, labels=labels)


def save_surface(surface: Surface, path: str):
    write_json(path, surface_to_dict(surface))


def load_surface(path: str, closed: bool = True) -> Surface:
    with open(path) as fh:
        return surface_from_dict(json.load(fh), closed=closed)


def unfolding_to_dict(cu) -> dict:
    return cu.as_dict()


def unfolding_from_dict(d: dict):
    from .alexandrov import GluingScheme
    from .constructions import CommonUnfolding
    poly = PlanarPolygon([tuple(p) for p in d["polygon"]])
    poly = poly.with_markers({k: float(v) for k, v in d.get("markers", {}).items()})
    cu = CommonUnfolding(
        polygon=poly,
        source_scheme=GluingScheme.from_dict(d["source_scheme"]),
        target_scheme=GluingScheme.from_dict(d["target_scheme"]),
        source_label=d.get("source_label", "source"),
        target_label=d.get("target_label", "target"),
        provenance=d.get("provenance", "file"),
        creases=[(tuple(p), tuple(q), t) for p, q, t in d.get("creases", [])],
    )
    return cu


def write_json(path: str, payload) -> None:
    """Atomic write: the file appears complete or not at all."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, indent=1, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def load_any(path: str):
    """Load a surface or an unfolding, keyed by its top-level fields."""
    with open(path) as fh:
        d = json.load(fh)
    if "faces" in d:
        return ("surface", surface_from_dict(d))
    if "polygon" in d:
        return ("unfolding", unfolding_from_dict(d))
    raise InvalidInput(f"{path}: neither a surface nor an unfolding")
