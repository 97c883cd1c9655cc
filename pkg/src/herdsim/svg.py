"""Minimal deterministic SVG emission.

Plotting here is presentation only, never computation, and carries no
timestamps or external renderer dependency, so identical inputs give
byte-identical documents.
"""

from __future__ import annotations

import math


def _fmt(v: float) -> str:
    return f"{v:.3f}"


class Canvas:
    """Fixed-viewport SVG document with a y-up world frame."""

    def __init__(self, x_min, x_max, y_min, y_max, width=720, height=720, pad=30):
        self.width = width
        self.height = height
        sx = (width - 2 * pad) / (x_max - x_min)
        sy = (height - 2 * pad) / (y_max - y_min)
        self.scale = min(sx, sy)
        self.x_min = x_min
        self.y_max = y_max
        self.pad = pad
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">',
            f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        ]

    def to_px(self, x, y):
        return (self.pad + (x - self.x_min) * self.scale,
                self.pad + (self.y_max - y) * self.scale)

    def polyline(self, points, stroke="black", width=1.0, dash=None, fill="none"):
        if not points:
            return
        px = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in (self.to_px(x, y) for x, y in points))
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(f'<polyline points="{px}" fill="{fill}" stroke="{stroke}" '
                          f'stroke-width="{_fmt(width)}"{dash_attr}/>')

    def circle(self, cx, cy, r, stroke="black", fill="none", width=1.0, dash=None):
        x, y = self.to_px(cx, cy)
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r * self.scale)}" '
                          f'fill="{fill}" stroke="{stroke}" stroke-width="{_fmt(width)}"{dash_attr}/>')

    def rect(self, cx, cy, w, h, stroke="black", fill="none", width=1.0):
        x, y = self.to_px(cx - w / 2.0, cy + h / 2.0)
        self.parts.append(f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w * self.scale)}" '
                          f'height="{_fmt(h * self.scale)}" fill="{fill}" stroke="{stroke}" '
                          f'stroke-width="{_fmt(width)}"/>')

    def text(self, x, y, s, size=12, fill="black"):
        px, py = self.to_px(x, y)
        self.parts.append(f'<text x="{_fmt(px)}" y="{_fmt(py)}" font-size="{size}" '
                          f'font-family="sans-serif" fill="{fill}">{s}</text>')

    def marker(self, x, y, r=3.0, fill="black"):
        px, py = self.to_px(x, y)
        self.parts.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="{_fmt(r)}" fill="{fill}"/>')

    def render(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def trajectory_svg(trace, cfg) -> str:
    """World-frame overview: areas, obstacles with their shells, agent paths."""
    xs = [r[1] for r in trace.rows]
    ys = [r[2] for r in trace.rows]
    for j in range(trace.defender_count):
        xs += [r[7 + 6 * j] for r in trace.rows]
        ys += [r[8 + 6 * j] for r in trace.rows]
    xs += [cfg.safe.center.x - cfg.safe.radius, cfg.safe.center.x + cfg.safe.radius,
           cfg.protected.center.x - cfg.protected.radius]
    ys += [cfg.safe.center.y - cfg.safe.radius, cfg.safe.center.y + cfg.safe.radius,
           cfg.protected.center.y - cfg.protected.radius]
    for ob in cfg.obstacles:
        xs += [ob.center.x - ob.formation_width, ob.center.x + ob.formation_width]
        ys += [ob.center.y - ob.formation_height, ob.center.y + ob.formation_height]
    canvas = Canvas(min(xs) - 2, max(xs) + 2, min(ys) - 2, max(ys) + 2)

    canvas.circle(cfg.protected.center.x, cfg.protected.center.y, cfg.protected.radius,
                  stroke="deeppink", dash="6,4", width=1.5)
    canvas.text(cfg.protected.center.x + 1, cfg.protected.center.y, "protected")
    canvas.circle(cfg.safe.center.x, cfg.safe.center.y, cfg.safe.radius,
                  stroke="green", dash="6,4", width=1.5)
    canvas.text(cfg.safe.center.x + 1, cfg.safe.center.y, "safe")
    for ob in cfg.obstacles:
        canvas.rect(ob.center.x, ob.center.y, ob.width, ob.height,
                    stroke="dimgray", fill="lightgray")
        shell = _shell_points(ob, ob.formation_band.lo)
        canvas.polyline(shell + shell[:1], stroke="slateblue", width=0.8, dash="3,3")

    canvas.polyline([(r[1], r[2]) for r in trace.rows], stroke="red", width=1.5)
    canvas.marker(trace.rows[0][1], trace.rows[0][2], fill="red")
    for j in range(trace.defender_count):
        canvas.polyline([(r[7 + 6 * j], r[8 + 6 * j]) for r in trace.rows],
                        stroke="royalblue", width=1.0)
        canvas.marker(trace.rows[0][7 + 6 * j], trace.rows[0][8 + 6 * j], fill="royalblue")
    return canvas.render()


def _shell_points(ob, level, samples=180):
    pts = []
    two_n = 2.0 * ob.exponent
    for i in range(samples):
        beta = 2.0 * math.pi * i / samples
        c, s = math.cos(beta), math.sin(beta)
        denom = (abs(c) / ob.semi_x) ** two_n + (abs(s) / ob.semi_y) ** two_n
        r = ((1.0 + level) / denom) ** (1.0 / two_n)
        pts.append((ob.center.x + r * c, ob.center.y + r * s))
    return pts


def ratio_curves_svg(trace) -> str:
    """Critical relative distances (upper band) and defender speeds (lower
    band) over time, with the ratio-1 violation line marked."""
    t_end = trace.t_end if trace.rows else 1.0
    n = trace.defender_count
    base = 7 + 6 * n
    names = ["attacker/obstacle", "defender/obstacle", "defender/defender",
             "attacker/defender"]
    colors = ["darkorange", "seagreen", "royalblue", "crimson"]

    speeds = [[(r[0], math.hypot(r[9 + 6 * j], r[10 + 6 * j])) for r in trace.rows]
              for j in range(n)]
    s_max = max((s for data in speeds for _, s in data), default=1.0)
    s_max = max(s_max, 1e-9)

    # upper band: ratios in y [0.5, 2.5]; lower band: speeds scaled into [-2.4, -0.4]
    canvas = Canvas(0.0, t_end, -2.5, 2.6, height=640)
    canvas.text(0.02 * t_end, 2.55, "critical relative distances (1 = violation)")
    canvas.polyline([(0.0, 0.5 + 1.0), (t_end, 0.5 + 1.0)], stroke="black", dash="4,4")
    for k, (name, color) in enumerate(zip(names, colors)):
        data = [(r[0], 0.5 + min(r[base + k], 2.0)) for r in trace.rows]
        canvas.polyline(data, stroke=color, width=1.2)
        canvas.text(0.65 * t_end, 2.45 - 0.16 * k, name, size=11, fill=color)

    canvas.text(0.02 * t_end, -0.25, f"defender speeds (max {s_max:.3f} m/s)")
    canvas.polyline([(0.0, -2.4), (t_end, -2.4)], stroke="gray", width=0.5)
    for j, data in enumerate(speeds):
        scaled = [(t, -2.4 + 2.0 * s / s_max) for t, s in data]
        canvas.polyline(scaled, stroke=["royalblue", "seagreen", "darkorange",
                                        "purple", "teal"][j % 5], width=1.2)
    return canvas.render()


def sweep_heatmap_svg(report) -> str:
    """Grayscale map of the worst component-angle gap per sweep cell."""
    cells = report.cell_min.shape[0]
    size = max(256, min(768, 4 * cells))
    px = size / cells
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size + 40}" '
             f'viewBox="0 0 {size} {size + 40}">',
             f'<rect x="0" y="0" width="{size}" height="{size + 40}" fill="white"/>']
    for i in range(cells):
        for j in range(cells):
            worst = max(abs(report.cell_min[i, j]), abs(report.cell_max[i, j]))
            shade = int(255 * (1.0 - min(worst / math.pi, 1.0)))
            parts.append(f'<rect x="{_fmt(j * px)}" y="{_fmt(size - (i + 1) * px)}" '
                         f'width="{_fmt(px)}" height="{_fmt(px)}" '
                         f'fill="rgb({shade},{shade},255)"/>')
    parts.append(f'<text x="4" y="{size + 16}" font-size="12" font-family="sans-serif">'
                 f'max |gap| = {report.max_abs:.4f} rad '
                 f'(limit {math.pi - report.margin:.4f})</text>')
    parts.append(f'<text x="4" y="{size + 32}" font-size="12" font-family="sans-serif">'
                 f'x: span over [0, 2pi), y: target angle over [0, pi/2]</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
