#!/usr/bin/env python3
"""Rebuild tests/data/corpus from natural photographs bundled with scikit-image
and scikit-learn. PNG sources are stored as-is; JPEG sources are 2x box
downsampled so their original 8x8 compression grid does not survive."""
import os
import sys

import matplotlib
import skimage
import sklearn
from PIL import Image

SKIMAGE = os.path.join(os.path.dirname(skimage.__file__), "data")
SKLEARN = os.path.join(os.path.dirname(sklearn.__file__), "datasets", "images")
MPL = os.path.join(os.path.dirname(matplotlib.__file__), "mpl-data", "sample_data")

SOURCES = [
    ("astronaut", os.path.join(SKIMAGE, "astronaut.png")),
    ("coffee", os.path.join(SKIMAGE, "coffee.png")),
    ("chelsea", os.path.join(SKIMAGE, "chelsea.png")),
    ("motorcycle", os.path.join(SKIMAGE, "motorcycle_left.png")),
    ("china", os.path.join(SKLEARN, "china.jpg")),
    ("flower", os.path.join(SKLEARN, "flower.jpg")),
    ("hopper", os.path.join(MPL, "grace_hopper.jpg")),
    ("rocket", os.path.join(SKIMAGE, "rocket.jpg")),
]


def main(out_dir):
    os.makedirs(out_dir, exist_ok=True)
    for name, path in SOURCES:
        img = Image.open(path).convert("RGB")
        if path.endswith(".jpg"):
            img = img.reduce(2)
        img.save(os.path.join(out_dir, name + ".ppm"))
        print(name, img.size)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data/corpus")
