#!/usr/bin/env python3
"""Draws the starter example sketches (256x256 binary PGM, black on white).

Each class gets three variants with small, fixed changes in position, scale
and stroke width so the template set has some spread. Output is deterministic.
"""
import argparse
import math
import pathlib

from PIL import Image, ImageDraw

SIZE = 256
VARIANTS = [  # (dx, dy, scale, stroke)
    (0, 0, 1.00, 11),
    (-7, 5, 0.93, 10),
    (6, -4, 1.04, 12),
]


class Pen:
    def __init__(self, draw, dx, dy, scale, stroke):
        self.d, self.dx, self.dy, self.s, self.w = draw, dx, dy, scale, stroke

    def p(self, x, y):
        c = SIZE / 2
        return (c + (x - c) * self.s + self.dx, c + (y - c) * self.s + self.dy)

    def line(self, pts, closed=False):
        pts = [self.p(*q) for q in pts]
        if closed:
            pts = pts + [pts[0]]
        self.d.line(pts, fill=0, width=self.w, joint="curve")
        r = self.w / 2
        for x, y in pts:
            self.d.ellipse([x - r, y - r, x + r, y + r], fill=0)

    def ellipse(self, cx, cy, rx, ry, a0=0, a1=360, n=72):
        pts = []
        for i in range(n + 1):
            t = math.radians(a0 + (a1 - a0) * i / n)
            pts.append((cx + rx * math.cos(t), cy + ry * math.sin(t)))
        self.line(pts)

    def blob(self, pts):
        self.d.polygon([self.p(*q) for q in pts], fill=0)

    def disc(self, cx, cy, r):
        x, y = self.p(cx, cy)
        r *= self.s
        self.d.ellipse([x - r, y - r, x + r, y + r], fill=0)


def smiling_face(pen):
    pen.ellipse(128, 128, 95, 95)
    pen.disc(95, 100, 13)
    pen.disc(161, 100, 13)
    pen.ellipse(128, 135, 55, 45, 20, 160)


def house(pen):
    pen.line([(50, 120), (206, 120), (206, 235), (50, 235)], closed=True)
    pen.line([(35, 125), (128, 30), (221, 125)])
    pen.line([(110, 235), (110, 180), (146, 180), (146, 235)])


def tree(pen):
    pen.blob([(112, 150), (144, 150), (144, 240), (112, 240)])
    pen.disc(128, 95, 75)


def cat(pen):
    pen.ellipse(128, 150, 80, 70)
    pen.line([(62, 112), (70, 35), (112, 85)])
    pen.line([(144, 85), (186, 35), (194, 112)])
    pen.disc(100, 140, 10)
    pen.disc(156, 140, 10)
    pen.line([(20, 165), (95, 172)])
    pen.line([(161, 172), (236, 165)])


def fish(pen):
    pen.ellipse(110, 128, 80, 45)
    pen.line([(185, 128), (240, 85), (240, 171)], closed=True)
    pen.disc(70, 118, 9)


def star(pen):
    pts = []
    for i in range(10):
        r = 110 if i % 2 == 0 else 45
        t = math.radians(-90 + 36 * i)
        pts.append((128 + r * math.cos(t), 138 + r * math.sin(t)))
    pen.line(pts, closed=True)


def car(pen):
    pen.line([(20, 195), (20, 145), (70, 140), (95, 95), (175, 95), (200, 140), (236, 145), (236, 195)],
             closed=True)
    pen.disc(70, 205, 27)
    pen.disc(186, 205, 27)


def heart(pen):
    pts = []
    for i in range(73):
        t = 2 * math.pi * i / 72
        x = 16 * math.sin(t) ** 3
        y = 13 * math.cos(t) - 5 * math.cos(2 * t) - 2 * math.cos(3 * t) - math.cos(4 * t)
        pts.append((128 + 6.4 * x, 118 - 6.4 * y))
    pen.line(pts)


CLASSES = {
    "smiling_face": smiling_face,
    "house": house,
    "tree": tree,
    "cat": cat,
    "fish": fish,
    "star": star,
    "car": car,
    "heart": heart,
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data" / "sketches"))
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, draw_fn in CLASSES.items():
        for i, (dx, dy, scale, stroke) in enumerate(VARIANTS, start=1):
            img = Image.new("L", (SIZE, SIZE), 255)
            draw_fn(Pen(ImageDraw.Draw(img), dx, dy, scale, stroke))
            img.save(out / f"{name}_{i}.pgm")


if __name__ == "__main__":
    main()
