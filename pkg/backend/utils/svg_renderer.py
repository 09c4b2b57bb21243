# backend/utils/svg_renderer.py
"""
Kissing SVG Renderer
Flat 2D scenes of disks, polygons and segments in world coordinates, written
as SVG with ElementTree or rasterized to PNG with Pillow.
Exports:
- Scene: window + shapes; to_svg(), write_svg(path), rasterize(res), write_png(path, res)
- palette(n) -> hex colours
Shapes are duck-typed: circles need center/radius/orientation, tiles a complex boundary array.
"""

import logging
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
from matplotlib import colormaps
from matplotlib.colors import to_hex, to_rgb
from PIL import Image, ImageDraw

logger = logging.getLogger(__name__)

Window = Tuple[float, float, float, float]

BACKGROUND = "#ffffff"
STROKE = "#202020"
PLUS_FILL = "#d95f02"
MINUS_FILL = "#1b9e77"


def palette(n: int, name: str = "tab10") -> List[str]:
    cmap = colormaps[name]
    return [to_hex(cmap(i % cmap.N)) for i in range(max(n, 1))]


def _rgb(color: str) -> Tuple[int, int, int]:
    r, g, b = to_rgb(color)
    return (int(round(255 * r)), int(round(255 * g)), int(round(255 * b)))


@dataclass
class Disk:
    center: complex
    radius: float
    fill: str
    outside: bool = False


@dataclass
class Polygon:
    points: np.ndarray
    fill: str


@dataclass
class Segment:
    start: complex
    end: complex
    color: str = STROKE


@dataclass
class Scene:
    """Shapes drawn in insertion order; outside disks are painted first"""
    window: Window
    disks: List[Disk] = field(default_factory=list)
    polygons: List[Polygon] = field(default_factory=list)
    segments: List[Segment] = field(default_factory=list)

    # ========================================================================
    # BUILDING
    # ========================================================================

    def add_circle(self, circle, fill: str) -> None:
        """Add the disk bounded by a packing circle; lines are skipped"""
        if circle.is_line:
            logger.warning("⚠️ Skipping a circle through infinity")
            return
        self.disks.append(Disk(circle.center, circle.radius, fill, circle.orientation < 0))

    def add_polygon(self, points: Sequence[complex], fill: str) -> None:
        pts = np.asarray(points, dtype=complex)
        pts = pts[np.isfinite(pts)]
        if pts.size >= 3:
            self.polygons.append(Polygon(pts, fill))

    def add_segment(self, start: complex, end: complex, color: str = STROKE) -> None:
        self.segments.append(Segment(start, end, color))

    # ========================================================================
    # SVG
    # ========================================================================

    def _svg_point(self, z: complex, size: int) -> Tuple[float, float]:
        xmin, xmax, ymin, ymax = self.window
        scale = size / max(xmax - xmin, ymax - ymin)
        return ((z.real - xmin) * scale, (ymax - z.imag) * scale)

    def to_svg(self, size: int = 800) -> ET.Element:
        xmin, xmax, ymin, ymax = self.window
        scale = size / max(xmax - xmin, ymax - ymin)
        width, height = (xmax - xmin) * scale, (ymax - ymin) * scale
        root = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", version="1.1",
                          width=f"{width:.0f}", height=f"{height:.0f}",
                          viewBox=f"0 0 {width:.0f} {height:.0f}")
        ET.SubElement(root, "rect", x="0", y="0", width=f"{width:.0f}", height=f"{height:.0f}", fill=BACKGROUND)

        group = ET.SubElement(root, "g", stroke=STROKE)
        group.set("stroke-width", "0.5")
        for disk in sorted(self.disks, key=lambda d: not d.outside):
            x, y = self._svg_point(disk.center, size)
            r = disk.radius * scale
            if disk.outside:
                path = (f"M0 0H{width:.3f}V{height:.3f}H0Z "
                        f"M{x + r:.3f} {y:.3f}A{r:.3f} {r:.3f} 0 1 0 {x - r:.3f} {y:.3f}"
                        f"A{r:.3f} {r:.3f} 0 1 0 {x + r:.3f} {y:.3f}Z")
                element = ET.SubElement(group, "path", d=path, fill=disk.fill)
                element.set("fill-rule", "evenodd")
            else:
                ET.SubElement(group, "circle", cx=f"{x:.3f}", cy=f"{y:.3f}", r=f"{r:.3f}", fill=disk.fill)

        for polygon in self.polygons:
            coords = " ".join("{:.3f},{:.3f}".format(*self._svg_point(z, size)) for z in polygon.points)
            ET.SubElement(group, "polygon", points=coords, fill=polygon.fill)

        for segment in self.segments:
            x1, y1 = self._svg_point(segment.start, size)
            x2, y2 = self._svg_point(segment.end, size)
            ET.SubElement(group, "line", x1=f"{x1:.3f}", y1=f"{y1:.3f}", x2=f"{x2:.3f}", y2=f"{y2:.3f}",
                          stroke=segment.color)
        return root

    def write_svg(self, path: str, size: int = 800) -> None:
        ET.ElementTree(self.to_svg(size)).write(path, encoding="utf-8", xml_declaration=True)
        logger.info(f"💾 Saved SVG to {path}")

    # ========================================================================
    # RASTER
    # ========================================================================

    def rasterize(self, resolution: int = 1024) -> Image.Image:
        """The same scene drawn with Pillow at resolution pixels on the long side"""
        xmin, xmax, ymin, ymax = self.window
        scale = resolution / max(xmax - xmin, ymax - ymin)
        width = max(1, int(math.ceil((xmax - xmin) * scale)))
        height = max(1, int(math.ceil((ymax - ymin) * scale)))
        image = Image.new("RGB", (width, height), _rgb(BACKGROUND))
        draw = ImageDraw.Draw(image)

        def pixel(z: complex) -> Tuple[float, float]:
            return ((z.real - xmin) * scale, (ymax - z.imag) * scale)

        for disk in sorted(self.disks, key=lambda d: not d.outside):
            x, y = pixel(disk.center)
            r = disk.radius * scale
            box = [x - r, y - r, x + r, y + r]
            if disk.outside:
                draw.rectangle([0, 0, width, height], fill=_rgb(disk.fill))
                draw.ellipse(box, fill=_rgb(BACKGROUND), outline=_rgb(STROKE))
            else:
                draw.ellipse(box, fill=_rgb(disk.fill), outline=_rgb(STROKE))

        for polygon in self.polygons:
            draw.polygon([pixel(z) for z in polygon.points], fill=_rgb(polygon.fill))

        for segment in self.segments:
            draw.line([pixel(segment.start), pixel(segment.end)], fill=_rgb(segment.color))
        return image

    def write_png(self, path: str, resolution: int = 1024) -> None:
        self.rasterize(resolution).save(path, format="PNG")
        logger.info(f"💾 Saved PNG to {path}")


def fit_window(circles: Sequence, margin: float = 0.05, default: Window = (-2.0, 2.0, -2.0, 2.0)) -> Window:
    """Square window around every circle that is not a line"""
    boxes = [(c.center, c.radius) for c in circles if not c.is_line]
    if not boxes:
        return default
    xmin = min(z.real - r for z, r in boxes)
    xmax = max(z.real + r for z, r in boxes)
    ymin = min(z.imag - r for z, r in boxes)
    ymax = max(z.imag + r for z, r in boxes)
    half = 0.5 * max(xmax - xmin, ymax - ymin) * (1.0 + margin)
    cx, cy = 0.5 * (xmin + xmax), 0.5 * (ymin + ymax)
    return (cx - half, cx + half, cy - half, cy + half)


__all__ = ['Scene', 'Disk', 'Polygon', 'Segment', 'palette', 'fit_window', 'PLUS_FILL', 'MINUS_FILL']
