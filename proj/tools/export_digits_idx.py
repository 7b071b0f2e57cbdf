# Copyright 2026 The qdm developers.

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Export the UCI handwritten-digits set (8x8 grayscale) as IDX files.

Writes data/digits-images.idx3-ubyte and data/digits-labels.idx1-ubyte so
the repository carries a small self-contained training corpus in the same
container format as MNIST. Pixel intensities 0..16 are rescaled to 0..255.
"""

import struct
import sys
from pathlib import Path

import numpy as np
from sklearn.datasets import load_digits


def main(out_dir: str = "data") -> None:
    digits = load_digits()
    images = np.round(digits.images * 255.0 / 16.0).astype(np.uint8)
    labels = digits.target.astype(np.uint8)
    count, rows, cols = images.shape

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    with open(out / "digits-images.idx3-ubyte", "wb") as f:
        f.write(struct.pack(">IIII", 0x00000803, count, rows, cols))
        f.write(images.tobytes())

    with open(out / "digits-labels.idx1-ubyte", "wb") as f:
        f.write(struct.pack(">II", 0x00000801, count))
        f.write(labels.tobytes())

    print(f"wrote {count} images ({rows}x{cols}) to {out}/")


if __name__ == "__main__":
    main(*sys.argv[1:])
