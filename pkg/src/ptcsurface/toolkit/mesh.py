"""Triangle meshes of PTC surfaces of revolution, with OBJ export.

The axis of revolution is the ``t``-axis (first coordinate). Rings sit at the
cone junctions and consecutive rings share vertices, so the mesh has no
cracks. No caps are generated: the boundary circles stay open.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from ..solver import PtcSurface


@dataclass
class MeshSpec:
    segments_per_circle: int
    vertices: np.ndarray  # (n_rings * segments, 3)
    faces: np.ndarray  # (n_triangles, 3), zero-based

    @property
    def n_rings(self) -> int:
        return len(self.vertices) // self.segments_per_circle


def ring_abscissae(surface: PtcSurface) -> np.ndarray:
    n = surface.n_cones
    return (np.arange(n + 1) - n / 2) * surface.ell


def surface_mesh(surface: PtcSurface, segments: int = 64) -> MeshSpec:
    if segments < 3:
        raise DomainError(f"need at least 3 segments per circle, got {segments}")
    theta = 2 * np.pi * np.arange(segments) / segments
    ts = ring_abscissae(surface)
    radii = np.asarray(surface.radii)
    verts = np.empty((len(ts) * segments, 3))
    verts[:, 0] = np.repeat(ts, segments)
    verts[:, 1] = np.outer(radii, np.cos(theta)).ravel()
    verts[:, 2] = np.outer(radii, np.sin(theta)).ravel()

    j = np.arange(segments)
    jn = (j + 1) % segments
    faces = []
    for k in range(len(ts) - 1):
        a = k * segments + j
        b = k * segments + jn
        c = (k + 1) * segments + jn
        d = (k + 1) * segments + j
        faces.append(np.stack([a, b, c], axis=1))
        faces.append(np.stack([a, c, d], axis=1))
    return MeshSpec(segments, verts, np.concatenate(faces))


def mesh_area(mesh: MeshSpec) -> float:
    p = mesh.vertices[mesh.faces]
    cross = np.cross(p[:, 1] - p[:, 0], p[:, 2] - p[:, 0])
    return float(0.5 * np.linalg.norm(cross, axis=1).sum())


def to_obj(mesh: MeshSpec) -> str:
    lines = [f"v {x:.17g} {y:.17g} {z:.17g}" for x, y, z in mesh.vertices.tolist()]
    lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in mesh.faces.tolist()]
    return "\n".join(lines) + "\n"
