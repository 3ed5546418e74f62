"""Lattice diagrams: von Neumann sites as crosses, cell eigenvalue points as circles.

The drawing area is the whole phase plane, ``x`` in ``[0, M)`` (units of
``c``) and ``p`` in ``[0, M)`` (units of ``2pi/(M c)``).  For rep A the
crosses are the a-lattice sites ``(s a, t 2pi/a)`` and the circles the kq
points ``(q_m, k_n)`` of the first unit cell; rep B is the mirror with ``b``.
Output depends only on the inputs, byte for byte.
"""

from __future__ import annotations

from .phasespace import PhasePlane, Rep

WIDTH, HEIGHT = 600, 400
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 60, 20, 40, 50


def diagram_points(plane: PhasePlane, rep: Rep):
    """``(sites, circles)`` as lists of ``(x index, p index)`` on the M x M grid."""
    rep = Rep.parse(rep)
    d, L = plane.period(rep), plane.copies(rep)
    # lattice of the same constant d: L columns along x, d rows along p
    sites = [(i * d, j * L) for j in range(d) for i in range(L)]
    circles = [(m, n) for n in range(L) for m in range(d)]
    return sites, circles


def _f(v: float) -> str:
    return f"{v:.2f}"


def render_svg(plane: PhasePlane, rep: Rep) -> str:
    rep = Rep.parse(rep)
    M = plane.M
    d, L = plane.period(rep), plane.copies(rep)
    pw = WIDTH - MARGIN_L - MARGIN_R
    ph = HEIGHT - MARGIN_T - MARGIN_B
    sx = lambda x: MARGIN_L + pw * x / M
    sy = lambda p: MARGIN_T + ph * (1 - p / M)
    const = "a" if rep is Rep.A else "b"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH // 2}" y="24" text-anchor="middle" font-family="sans-serif" '
        f'font-size="14">M={M}, {const}={d}c (rep {rep.value})</text>',
    ]
    out.append('<g class="cells" stroke="#bbbbbb" stroke-width="0.8">')
    for i in range(L + 1):
        x = _f(sx(i * d))
        out.append(f'<line x1="{x}" y1="{_f(sy(0))}" x2="{x}" y2="{_f(sy(M))}"/>')
    for j in range(d + 1):
        y = _f(sy(j * L))
        out.append(f'<line x1="{_f(sx(0))}" y1="{y}" x2="{_f(sx(M))}" y2="{y}"/>')
    out.append("</g>")

    sites, circles = diagram_points(plane, rep)
    r = 5.0
    for x, p in sites:
        cx, cy = sx(x), sy(p)
        out.append(
            f'<g class="site" stroke="black" stroke-width="1.5">'
            f'<line x1="{_f(cx - r)}" y1="{_f(cy - r)}" x2="{_f(cx + r)}" y2="{_f(cy + r)}"/>'
            f'<line x1="{_f(cx - r)}" y1="{_f(cy + r)}" x2="{_f(cx + r)}" y2="{_f(cy - r)}"/></g>'
        )
    for x, p in circles:
        out.append(
            f'<circle class="cell-point" cx="{_f(sx(x))}" cy="{_f(sy(p))}" r="3.50" '
            f'fill="none" stroke="#1f4e9e" stroke-width="1.2"/>'
        )

    out.append(
        f'<text x="{_f(MARGIN_L + pw / 2)}" y="{HEIGHT - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">x (units of c)</text>'
    )
    out.append(
        f'<text x="16" y="{_f(MARGIN_T + ph / 2)}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="12" transform="rotate(-90 16 {_f(MARGIN_T + ph / 2)})">p (units of 2π/Mc)</text>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_ascii(plane: PhasePlane, rep: Rep) -> str:
    """M x M grid, two characters per point: site column then circle column.

    A site prints ``x`` in the first column (``.`` otherwise), an eigenvalue
    point prints ``o`` in the second, so coinciding markers stay countable.
    The top row is the largest momentum index.
    """
    M = plane.M
    sites, circles = diagram_points(plane, rep)
    site_set, circle_set = set(sites), set(circles)
    lines = []
    for p in range(M - 1, -1, -1):
        cells = []
        for x in range(M):
            cells.append(("x" if (x, p) in site_set else ".") + ("o" if (x, p) in circle_set else " "))
        lines.append(f"{p:4d} |" + "".join(cells).rstrip())
    lines.append("     +" + "-" * (2 * M))
    lines.append("      " + "".join(f"{x % 10:<2d}" for x in range(M)).rstrip())
    return "\n".join(lines) + "\n"
