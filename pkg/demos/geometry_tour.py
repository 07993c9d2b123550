"""
Cube map geometry tour
======================

Walks the three coordinate domains used by the library:

1. unfold coordinates on the 4x3 cube-map canvas,
2. points on the cube surface in 3-D,
3. points on the inscribed sphere,

and demonstrates that the chain unfold -> cube -> sphere -> unfold
returns to the starting pixel.
"""

import numpy as np

from cubemc import (
    CubeLayout,
    Face,
    cube_to_sphere,
    face_of,
    sphere_to_unfold,
    unfold_to_cube,
    unfold_to_sphere,
)

layout = CubeLayout(64, 64)
print(f"canvas: {layout.canvas_width} x {layout.canvas_height}, "
      f"sphere radius {layout.radius}")

# Each face occupies one half-open rectangle of the canvas.  The four
# corner rectangles of the 4x3 grid belong to no face.
print("\nface rectangles and centers:")
for face in Face:
    x0, y0, x1, y1 = layout.face_rect(face)
    cx, cy = layout.face_center(face)
    sx, sy, sz = unfold_to_sphere(cx, cy, layout)
    print(f"  {face.name:6s} rect [{x0:3d},{x1:3d}) x [{y0:3d},{y1:3d})"
          f"  center ({cx:5.1f},{cy:5.1f}) -> sphere ({sx:+.0f},{sy:+.0f},{sz:+.0f})")

hole = face_of(200.0, 10.0, layout)
print(f"\nface_of(200, 10) = {hole}   (top row, column 3 is a corner hole)")

# Round trip a batch of random on-face points.
rng = np.random.default_rng(0)
pts = []
while len(pts) < 5000:
    x = rng.uniform(0, layout.canvas_width)
    y = rng.uniform(0, layout.canvas_height)
    if face_of(x, y, layout) is not None:
        pts.append((x, y))
xs, ys = np.array(pts).T

sx, sy, sz = unfold_to_sphere(xs, ys, layout)
_, bx, by = sphere_to_unfold(sx, sy, sz, layout)
err = np.hypot(bx - xs, by - ys)
print(f"\nround trip over {len(pts)} random points:"
      f" max error {err.max():.3e} px (budget 1e-9 * faceWidth)")

radii = np.sqrt(sx * sx + sy * sy + sz * sz)
print(f"sphere radius spread: [{radii.min():.12f}, {radii.max():.12f}]")

# A single worked example, matching the path a block center takes
# during motion compensation.
cx, cy = 32.0, 96.0
cube = unfold_to_cube(cx, cy, layout)
sph = cube_to_sphere(*cube, layout)
print(f"\nfront-face center ({cx}, {cy}): cube {cube} -> sphere {sph}")
