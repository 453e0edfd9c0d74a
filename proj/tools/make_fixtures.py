"""Regenerates the natural-image fixtures under tests/fixtures/.

The carrier and secret are scikit-image sample photographs (``astronaut``,
public domain NASA image; ``coffee``, CC0) resized to 640x480 and written as
24-bit bottom-up BMPs with Pillow, independently of the project's codec.
"""

import pathlib

import numpy as np
from PIL import Image
from skimage import data

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def save(name: str, rgb: np.ndarray) -> None:
    img = Image.fromarray(rgb).resize((640, 480), Image.Resampling.LANCZOS)
    img.save(OUT / name, format="BMP")


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    save("carrier_640x480.bmp", data.astronaut())
    save("secret_640x480.bmp", data.coffee())


if __name__ == "__main__":
    main()
