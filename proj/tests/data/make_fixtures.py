#!/usr/bin/env python3
"""Regenerates the committed test fixtures under tests/data/.

mini/       small battery used by the CLI determinism and protocol tests
uiexport/   uncompressed two-file bundles in the editor's export layout
"""
import gzip
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))


def write_gz(path, text):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "wb") as f:
        with gzip.GzipFile(fileobj=f, mode="wb", mtime=0, filename="") as g:
            g.write(text.encode())


def write_plain(path, text):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", newline="\n") as f:
        f.write(text)


def blobs(rng, centers, per, spread):
    pts, lab = [], []
    for c, (cx, cy) in enumerate(centers, start=1):
        for _ in range(per):
            pts.append((round(rng.gauss(cx, spread), 4), round(rng.gauss(cy, spread), 4)))
            lab.append(c)
    return pts, lab


def data_text(pts):
    return "".join(" ".join(repr(v) for v in p) + "\n" for p in pts)


def labels_text(lab):
    return "".join("%d\n" % v for v in lab)


def mini(rng):
    root = os.path.join(HERE, "mini", "mini")
    # three blobs; second labelling merges the two right-hand blobs
    pts, lab = blobs(rng, [(0, 0), (6, 0), (6, 6)], 20, 0.8)
    write_gz(os.path.join(root, "blobs3.data.gz"), data_text(pts))
    write_gz(os.path.join(root, "blobs3.labels0.gz"), labels_text(lab))
    write_gz(os.path.join(root, "blobs3.labels1.gz"), labels_text([1 if v == 1 else 2 for v in lab]))

    # four blobs plus uniform noise; two alternative 4-labellings
    pts, lab = blobs(rng, [(0, 0), (8, 0), (0, 8), (8, 8)], 15, 1.0)
    for _ in range(12):
        pts.append((round(rng.uniform(-3, 11), 4), round(rng.uniform(-3, 11), 4)))
        lab.append(0)
    alt = [0 if v == 0 else v for v in lab]
    for i in range(0, 60, 15):  # the alternative expert moves 3 points per cluster to noise
        for j in range(3):
            alt[i + j] = 0
    write_gz(os.path.join(root, "noisy4.data.gz"), data_text(pts))
    write_gz(os.path.join(root, "noisy4.labels0.gz"), labels_text(lab))
    write_gz(os.path.join(root, "noisy4.labels1.gz"), labels_text(alt))

    # 3-d, two elongated groups, k=2 and a noisy k=3 refinement
    pts3, lab3, lab3b = [], [], []
    for c, (cx, cy, cz) in enumerate([(0, 0, 0), (10, 1, -2)], start=1):
        for t in range(18):
            pts3.append((round(cx + rng.gauss(0, 2.0), 4), round(cy + rng.gauss(0, 0.4), 4),
                         round(cz + rng.gauss(0, 0.4), 4)))
            lab3.append(c)
            lab3b.append(0 if t % 9 == 0 else (c if c == 1 else (2 if t % 2 else 3)))
    write_gz(os.path.join(root, "aniso.data.gz"), data_text(pts3))
    write_gz(os.path.join(root, "aniso.labels0.gz"), labels_text(lab3))
    write_gz(os.path.join(root, "aniso.labels1.gz"), labels_text(lab3b))


def uiexport(rng):
    root = os.path.join(HERE, "uiexport", "ui")
    for b in range(10):
        n_clusters = 2 + b % 4
        per = 3 + b
        pts, lab = blobs(rng, [(rng.uniform(-50, 50), rng.uniform(-50, 50)) for _ in range(n_clusters)],
                         per, rng.uniform(0.5, 3.0))
        pts = [(float("%.17g" % (x + rng.random() * 1e-7)), float("%.17g" % y)) for x, y in pts]
        name = "bundle%d" % b
        write_plain(os.path.join(root, name + ".data"),
                    "".join("%.17g %.17g\n" % p for p in pts))
        write_plain(os.path.join(root, name + ".labels0"), labels_text(lab))
        if b % 2 == 0:
            noisy = [0 if i % 5 == 0 else v for i, v in enumerate(lab)]
            write_plain(os.path.join(root, name + ".labels1"), labels_text(noisy))


if __name__ == "__main__":
    mini(random.Random(20221001))
    uiexport(random.Random(4))
