#!/usr/bin/env python3
"""Regenerates the mesh, point-cloud and graph fixtures in this directory.

Deterministic: every random choice is driven by a fixed seed. Run from the
repository root:  python3 fixtures/generate.py
"""
import itertools
import math
import os

import numpy as np
from scipy.spatial import Delaunay

HERE = os.path.dirname(os.path.abspath(__file__))


def write_mesh(name, verts, tris):
    d = os.path.join(HERE, name)
    os.makedirs(d, exist_ok=True)
    with open(os.path.join(d, "vertices.txt"), "w") as f:
        for v in verts:
            f.write(" ".join(repr(float(x)) for x in v) + "\n")
    with open(os.path.join(d, "elements.txt"), "w") as f:
        for t in tris:
            f.write(" ".join(str(int(i)) for i in t) + "\n")


def write_points(path, pts):
    with open(os.path.join(HERE, path), "w") as f:
        for p in pts:
            f.write(" ".join(repr(float(x)) for x in p) + "\n")


def ccw(verts, tris):
    out = []
    for t in tris:
        a, b, c = (np.asarray(verts[i]) for i in t)
        area2 = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        out.append((t[0], t[1], t[2]) if area2 > 0 else (t[0], t[2], t[1]))
    return out


def compact(verts, tris):
    used = sorted({i for t in tris for i in t})
    remap = {old: new for new, old in enumerate(used)}
    return [verts[i] for i in used], [tuple(remap[i] for i in t) for t in tris]


def edge_cofaces(tris):
    cof = {}
    for ti, t in enumerate(tris):
        for a, b in itertools.combinations(sorted(t), 2):
            cof.setdefault((a, b), []).append(ti)
    return cof


def euler(verts, tris):
    return len(verts) - len(edge_cofaces(tris)) + len(tris)


def opposite_angle(verts, t, edge):
    (o,) = [i for i in t if i not in edge]
    u = np.asarray(verts[edge[0]]) - np.asarray(verts[o])
    w = np.asarray(verts[edge[1]]) - np.asarray(verts[o])
    return math.degrees(math.acos(np.dot(u, w) / np.linalg.norm(u) / np.linalg.norm(w)))


def check_manifold(verts, tris):
    cof = edge_cofaces(tris)
    assert all(len(c) <= 2 for c in cof.values())
    # vertex links must be a single path or cycle (no pinch points)
    for v in range(len(verts)):
        link = [tuple(i for i in t if i != v) for t in tris if v in t]
        adj = {}
        for a, b in link:
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        seen, stack = set(), [next(iter(adj))]
        while stack:
            x = stack.pop()
            if x not in seen:
                seen.add(x)
                stack.extend(adj[x] - seen)
        assert len(seen) == len(adj), f"pinch vertex {v}"


def delaunay_margins(verts, tris):
    """Smallest slack of the boundary-edge and interior-edge Delaunay conditions (degrees)."""
    cof = edge_cofaces(tris)
    bnd, inner = 180.0, 180.0
    for e, ts in cof.items():
        angles = [opposite_angle(verts, tris[t], e) for t in ts]
        if len(ts) == 1:
            bnd = min(bnd, 90.0 - angles[0])
        else:
            inner = min(inner, 180.0 - sum(angles))
    return bnd, inner


# ---------------------------------------------------------------- cavity
def crossed_square(n, side):
    """n x n squares, each split into four triangles through its centre."""
    h = side / n
    verts, index = [], {}
    for j in range(n + 1):
        for i in range(n + 1):
            index[("g", i, j)] = len(verts)
            verts.append((i * h, j * h))
    for j in range(n):
        for i in range(n):
            index[("c", i, j)] = len(verts)
            verts.append(((i + 0.5) * h, (j + 0.5) * h))
    tris = []
    for j in range(n):
        for i in range(n):
            a, b = index[("g", i, j)], index[("g", i + 1, j)]
            c, d = index[("g", i + 1, j + 1)], index[("g", i, j + 1)]
            m = index[("c", i, j)]
            tris += [(a, b, m), (b, c, m), (c, d, m), (d, a, m)]
    return verts, tris


# ---------------------------------------------------------------- darcy
def darcy_square(seed):
    rng = np.random.default_rng(seed)
    k = 10
    bnd = []
    for i in range(k):
        t = i / k
        bnd += [(t, 0.0), (1.0, t), (1.0 - t, 1.0), (0.0, 1.0 - t)]
    inner = []
    while len(inner) < 81:
        p = rng.uniform(0.06, 0.94, size=2)
        if all(np.hypot(*(p - q)) > 0.072 for q in inner):
            inner.append(p)
    pts = np.array(bnd + [tuple(p) for p in inner])
    tri = Delaunay(pts)
    assert len(tri.coplanar) == 0
    tris = ccw(pts, [tuple(s) for s in tri.simplices])
    return [tuple(p) for p in pts], tris


# ---------------------------------------------------------------- lattice meshes with holes
def lattice_domain(cols, rows, holes, radius):
    h = math.sqrt(3.0) / 2.0
    pts = [(i + 0.5 * (j % 2), j * h) for j in range(rows) for i in range(cols)]
    tri = Delaunay(np.array(pts))
    tris = []
    for s in tri.simplices:
        p = [np.array(pts[i]) for i in s]
        lens = [np.linalg.norm(p[a] - p[b]) for a, b in ((0, 1), (1, 2), (0, 2))]
        if max(abs(l - 1.0) for l in lens) > 1e-9:
            continue
        c = sum(p) / 3.0
        if any(np.hypot(*(c - np.array(hc))) < radius for hc in holes):
            continue
        tris.append(tuple(s))
    verts, tris = compact(pts, tris)
    tris = ccw(verts, tris)
    check_manifold(verts, tris)
    return verts, tris


def main():
    # three-triangle strip
    write_mesh("strip3", [(0, 0), (1, 0), (2, 0), (1, 1), (2, 1)], [(0, 1, 3), (1, 2, 3), (2, 4, 3)])

    for n in (4, 8, 16):
        v, t = crossed_square(n, math.pi)
        write_mesh(f"cavity_{n}", v, t)

    for seed in range(1000):
        v, t = darcy_square(seed)
        if len(t) != 200:
            continue
        b, i = delaunay_margins(v, t)
        if b > 5.0 and i > 2.0:
            print("darcy seed", seed, "margins", b, i)
            write_mesh("darcy_square", v, t)
            break
    else:
        raise SystemExit("no acceptable darcy mesh")

    holes4 = [(4.5, 3.5), (12.5, 3.5), (4.5, 10.5), (12.5, 10.5)]
    v, t = lattice_domain(18, 17, holes4, 1.6)
    assert euler(v, t) == 1 - 4, euler(v, t)
    write_mesh("four_holes", v, t)

    v, t = lattice_domain(10, 10, [], 0.0)
    assert euler(v, t) == 1
    write_mesh("disk", v, t)

    v, t = lattice_domain(12, 11, [(5.5, 4.3)], 1.6)
    assert euler(v, t) == 0, euler(v, t)
    write_mesh("annulus", v, t)

    chord = 2.0 * math.sin(math.pi / 20.0)
    write_points("circle20.txt", [(math.cos(2 * math.pi * k / 20), math.sin(2 * math.pi * k / 20)) for k in range(20)])
    with open(os.path.join(HERE, "circle20.radius"), "w") as f:
        f.write(repr(1.2 * chord) + "\n")
    write_points("grid6.txt", [(0.2 * i, 0.2 * j) for j in range(6) for i in range(6)])

    os.makedirs(os.path.join(HERE, "rank"), exist_ok=True)
    graphs = {
        "path.txt": [(0, 1, 1.0), (1, 2, 1.0)],
        "triangle_consistent.txt": [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 2.0)],
        "triangle_cyclic.txt": [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)],
    }
    for name, rows in graphs.items():
        with open(os.path.join(HERE, "rank", name), "w") as f:
            for a, b, w in rows:
                f.write(f"{a} {b} {w!r}\n")

    with open(os.path.join(HERE, "l_bitmap.txt"), "w") as f:
        f.write("0 1\n1 1\n")


if __name__ == "__main__":
    main()
