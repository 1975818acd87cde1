"""Minimal self-contained SVG figures built with xml.etree."""

import xml.etree.ElementTree as ET

import numpy as np

SVG_NS = "http://www.w3.org/2000/svg"

WIDTH = 640.0
HEIGHT = 640.0
MARGIN = 60.0


def fmt(x):
    """Shortest round-tripping decimal used in every text output."""
    return format(float(x), ".17g")


def _px(x):
    # 0.1 px on a 520 px plot is finer than 1e-3 of the extent
    return f"{x:.1f}"


class Figure:
    """Data-to-pixel mapping plus an element tree.

    ``xlim`` and ``ylim`` are the exact data extents of the plot area; they
    are recorded on the root element as ``data-xlim`` / ``data-ylim``.
    """

    def __init__(self, xlim, ylim, title="", xlabel="", ylabel=""):
        self.xlim = tuple(float(v) for v in xlim)
        self.ylim = tuple(float(v) for v in ylim)
        self.root = ET.Element("svg", {
            "xmlns": SVG_NS,
            "width": _px(WIDTH), "height": _px(HEIGHT),
            "viewBox": f"0 0 {_px(WIDTH)} {_px(HEIGHT)}",
            "data-xlim": " ".join(fmt(v) for v in self.xlim),
            "data-ylim": " ".join(fmt(v) for v in self.ylim),
        })
        style = ET.SubElement(self.root, "style")
        style.text = (
            "text{font-family:sans-serif;font-size:13px}"
            ".frame{fill:none;stroke:#000;stroke-width:1}"
            ".tick{stroke:#000;stroke-width:1}"
        )
        ET.SubElement(self.root, "rect", {
            "x": "0", "y": "0", "width": _px(WIDTH), "height": _px(HEIGHT),
            "fill": "#fff"})
        self.plot = ET.SubElement(self.root, "g", {"id": "plot"})
        self.overlay = ET.SubElement(self.root, "g", {"id": "overlay"})
        self._axes(title, xlabel, ylabel)

    def x(self, v):
        x0, x1 = self.xlim
        return MARGIN + (np.asarray(v) - x0) / (x1 - x0) * (WIDTH - 2 * MARGIN)

    def y(self, v):
        y0, y1 = self.ylim
        return HEIGHT - MARGIN - (np.asarray(v) - y0) / (y1 - y0) * (HEIGHT - 2 * MARGIN)

    def _axes(self, title, xlabel, ylabel):
        ET.SubElement(self.overlay, "rect", {
            "class": "frame", "x": _px(MARGIN), "y": _px(MARGIN),
            "width": _px(WIDTH - 2 * MARGIN), "height": _px(HEIGHT - 2 * MARGIN)})
        for text, attrs in (
            (title, {"x": _px(WIDTH / 2), "y": _px(MARGIN / 2), "text-anchor": "middle"}),
            (xlabel, {"x": _px(WIDTH / 2), "y": _px(HEIGHT - 12), "text-anchor": "middle"}),
            (ylabel, {"x": "14", "y": _px(HEIGHT / 2), "text-anchor": "middle",
                      "transform": f"rotate(-90 14 {_px(HEIGHT / 2)})"}),
        ):
            if text:
                ET.SubElement(self.overlay, "text", attrs).text = text

    def ticks(self, xticks, yticks):
        """``xticks`` / ``yticks`` are ``(value, label)`` pairs."""
        bottom = HEIGHT - MARGIN
        for v, label in xticks:
            px = float(self.x(v))
            ET.SubElement(self.overlay, "line", {
                "class": "tick", "x1": _px(px), "x2": _px(px),
                "y1": _px(bottom), "y2": _px(bottom + 5)})
            ET.SubElement(self.overlay, "text", {
                "x": _px(px), "y": _px(bottom + 20), "text-anchor": "middle"}).text = label
        for v, label in yticks:
            py = float(self.y(v))
            ET.SubElement(self.overlay, "line", {
                "class": "tick", "x1": _px(MARGIN - 5), "x2": _px(MARGIN),
                "y1": _px(py), "y2": _px(py)})
            ET.SubElement(self.overlay, "text", {
                "x": _px(MARGIN - 8), "y": _px(py + 4), "text-anchor": "end"}).text = label

    def polyline(self, xs, ys, parent=None, **attrs):
        pts = " ".join(f"{_px(a)},{_px(b)}" for a, b in zip(self.x(xs), self.y(ys)))
        base = {"points": pts, "fill": "none"}
        base.update({k.replace("_", "-"): str(v) for k, v in attrs.items()})
        return ET.SubElement(self.plot if parent is None else parent, "polyline", base)

    def marker(self, xv, yv, shape="circle", size=5.0, parent=None, **attrs):
        px, py = float(self.x(xv)), float(self.y(yv))
        target = self.overlay if parent is None else parent
        a = {k.replace("_", "-"): str(v) for k, v in attrs.items()}
        if shape == "circle":
            a.update({"cx": _px(px), "cy": _px(py), "r": _px(size)})
            return ET.SubElement(target, "circle", a)
        a.update({"x": _px(px - size), "y": _px(py - size),
                  "width": _px(2 * size), "height": _px(2 * size)})
        return ET.SubElement(target, "rect", a)

    def rect(self, x0, x1, y0, y1, **attrs):
        left, right = float(self.x(x0)), float(self.x(x1))
        top, bottom = float(self.y(y1)), float(self.y(y0))
        a = {"x": _px(left), "y": _px(top), "width": _px(right - left),
             "height": _px(bottom - top)}
        a.update({k.replace("_", "-"): str(v) for k, v in attrs.items()})
        return ET.SubElement(self.plot, "rect", a)

    def legend(self, entries):
        """``entries``: ``(label, colour)`` pairs, drawn top-right."""
        g = ET.SubElement(self.overlay, "g", {"id": "legend"})
        for i, (label, colour) in enumerate(entries):
            y = MARGIN + 14 + 18 * i
            x = WIDTH - MARGIN - 110
            ET.SubElement(g, "rect", {"x": _px(x), "y": _px(y - 10), "width": "12",
                                      "height": "12", "fill": colour})
            ET.SubElement(g, "text", {"x": _px(x + 18), "y": _px(y)}).text = label

    def tostring(self):
        ET.indent(self.root)
        return ET.tostring(self.root, encoding="unicode", xml_declaration=True) + "\n"


def split_on_jumps(xs, ys, jump=np.pi):
    """Break a sampled periodic curve wherever consecutive values wrap."""
    xs, ys = np.asarray(xs), np.asarray(ys)
    cut = np.nonzero((np.abs(np.diff(xs)) > jump) | (np.abs(np.diff(ys)) > jump))[0] + 1
    return [(a, b) for a, b in zip(np.split(xs, cut), np.split(ys, cut)) if a.size > 1]
