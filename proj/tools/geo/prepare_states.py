#!/usr/bin/env python3
"""Builds core/assets/us_states.geojson from the us-atlas states-albers-10m topology.

The source is the npm package us-atlas (ISC, derived from U.S. Census Bureau
cartographic boundary files). Coordinates are already Albers USA projected with
Alaska and Hawaii inset, y-down, in a ~975x610 frame.

    npm pack us-atlas@3.0.1 && tar xzf us-atlas-3.0.1.tgz
    python3 tools/geo/prepare_states.py package/states-albers-10m.json core/assets/us_states.geojson
"""
import json
import math
import sys

from shapely.geometry import Polygon, mapping
from shapely.validation import make_valid

FIPS_TO_USPS = {
    "01": "AL", "02": "AK", "04": "AZ", "05": "AR", "06": "CA", "08": "CO", "09": "CT",
    "10": "DE", "11": "DC", "12": "FL", "13": "GA", "15": "HI", "16": "ID", "17": "IL",
    "18": "IN", "19": "IA", "20": "KS", "21": "KY", "22": "LA", "23": "ME", "24": "MD",
    "25": "MA", "26": "MI", "27": "MN", "28": "MS", "29": "MO", "30": "MT", "31": "NE",
    "32": "NV", "33": "NH", "34": "NJ", "35": "NM", "36": "NY", "37": "NC", "38": "ND",
    "39": "OH", "40": "OK", "41": "OR", "42": "PA", "44": "RI", "45": "SC", "46": "SD",
    "47": "TN", "48": "TX", "49": "UT", "50": "VT", "51": "VA", "53": "WA", "54": "WV",
    "55": "WI", "56": "WY",
}

# Offshore marker discs for regions too small to colour at micromap scale.
MARKERS = {"DC": (905.0, 262.0), "DE": (905.0, 232.0), "RI": (925.0, 140.0)}
MARKER_RADIUS = 9.0
TOLERANCE = 1.6
MIN_AREA = 12.0


def decode_arcs(topo):
    sx, sy = topo["transform"]["scale"]
    tx, ty = topo["transform"]["translate"]
    arcs = []
    for arc in topo["arcs"]:
        x = y = 0
        pts = []
        for dx, dy in arc:
            x += dx
            y += dy
            pts.append((x * sx + tx, y * sy + ty))
        arcs.append(pts)
    return arcs


def ring(arcs, indices):
    out = []
    for i in indices:
        pts = arcs[i] if i >= 0 else list(reversed(arcs[~i]))
        out.extend(pts if not out else pts[1:])
    return out


def disc(cx, cy, r, n=16):
    return [(round(cx + r * math.cos(2 * math.pi * k / n), 2),
             round(cy + r * math.sin(2 * math.pi * k / n), 2)) for k in range(n)]


def main(src, dst):
    topo = json.load(open(src))
    arcs = decode_arcs(topo)
    features = []
    for geom in topo["objects"]["states"]["geometries"]:
        fips = geom["id"]
        if fips not in FIPS_TO_USPS:
            continue
        usps = FIPS_TO_USPS[fips]
        polys = geom["arcs"] if geom["type"] == "MultiPolygon" else [geom["arcs"]]
        rings = []
        for poly in polys:
            shell = Polygon(ring(arcs, poly[0]))
            simplified = shell.simplify(TOLERANCE, preserve_topology=True)
            if not simplified.is_valid:
                simplified = make_valid(simplified)
            if simplified.area < MIN_AREA and usps not in MARKERS:
                continue
            parts = getattr(simplified, "geoms", [simplified])
            for part in parts:
                if part.geom_type != "Polygon" or part.area <= 0:
                    continue
                coords = [(round(x, 2), round(y, 2)) for x, y in part.exterior.coords[:-1]]
                if not Polygon(coords).is_valid:
                    # Rounding can fold a narrow spit; rebuild from the repaired shell.
                    fixed = Polygon(coords).buffer(0)
                    fixed = max(getattr(fixed, "geoms", [fixed]), key=lambda g: g.area)
                    coords = [(round(x, 2), round(y, 2)) for x, y in fixed.exterior.coords[:-1]]
                if len(coords) >= 3 and Polygon(coords).is_valid:
                    rings.append(coords)
        # Keep the largest ring for tiny regions so the outline is still drawn.
        if not rings:
            shell = Polygon(ring(arcs, polys[0][0]))
            rings.append([(round(x, 2), round(y, 2)) for x, y in shell.exterior.coords[:-1]])
        if usps in MARKERS:
            rings.append(disc(*MARKERS[usps], MARKER_RADIUS))
        anchor_ring = max(rings, key=lambda r: Polygon(r).area)
        c = Polygon(anchor_ring).representative_point()
        features.append({
            "type": "Feature",
            "properties": {"usps": usps, "fips": fips, "name": geom["properties"]["name"],
                           "anchor": [round(c.x, 2), round(c.y, 2)]},
            "geometry": {"type": "MultiPolygon", "coordinates": [[[list(p) for p in r] + [list(r[0])]] for r in rings]},
        })
    features.sort(key=lambda f: f["properties"]["usps"])
    assert len(features) == 51, len(features)
    with open(dst, "w") as fh:
        fh.write('{"type":"FeatureCollection","features":[\n')
        fh.write(",\n".join(json.dumps(f, separators=(",", ":")) for f in features))
        fh.write("\n]}\n")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
