#!/usr/bin/env python3
# Copyright (c) 2026 The SyncGAN Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Convert the digits bundled in the `mnist` npm package to gzipped IDX files.

The npm package ships the 10000-image MNIST test split as per-digit JSON arrays
of pixel intensities in [0, 1] rounded to three decimals. Multiplying by 255 and
rounding recovers the original bytes exactly.

Usage:
    npm pack mnist && tar xzf mnist-*.tgz
    python3 tools/import_npm_mnist.py package/src/digits data/mnist
"""
import gzip
import json
import struct
import sys
from pathlib import Path


def main() -> None:
    src, dst = Path(sys.argv[1]), Path(sys.argv[2])
    dst.mkdir(parents=True, exist_ok=True)
    images, labels = bytearray(), bytearray()
    count = 0
    for digit in range(10):
        data = json.loads((src / f"{digit}.json").read_text())["data"]
        assert len(data) % 784 == 0
        for v in data:
            images.append(int(round(v * 255.0)))
        n = len(data) // 784
        labels.extend([digit] * n)
        count += n
    with gzip.GzipFile(dst / "t10k-images-idx3-ubyte.gz", "wb", mtime=0) as f:
        f.write(struct.pack(">IIII", 0x803, count, 28, 28) + bytes(images))
    with gzip.GzipFile(dst / "t10k-labels-idx1-ubyte.gz", "wb", mtime=0) as f:
        f.write(struct.pack(">II", 0x801, count) + bytes(labels))
    print(f"wrote {count} images to {dst}")


if __name__ == "__main__":
    main()
