"""``shapeclf`` command line: synth, segment, extract, train, predict, crossval.

Exit status is 0 on success, 1 on data or model errors and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import dataio
from .dataio import Dataset, format_number
from .evaluation import cross_validate, render_table
from .labeling import EmptyMask
from .learners import LEARNER_NAMES, LearnerSpec, dumps_model, fit_learner, loads_model
from .pipeline import feature_dataset, image_features
from .raster import POLARITIES, load_image, segment, write_pgm
from .synth import GenParams, write_dataset


class DataError(Exception):
    """Failure attributable to an input or output file."""


def _read_bytes(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise DataError(f"{path}: {exc.strerror}") from None


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise DataError(f"{path}: {exc.strerror}") from None


def _load_data(path: str) -> Dataset:
    text = _read_bytes(path).decode("utf-8")
    try:
        if path.lower().endswith(".arff"):
            return dataio.parse_arff(text)
        return dataio.parse_csv(text)
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from None


def _dump_data(ds: Dataset, path: str) -> str:
    return dataio.write_arff(ds) if path.lower().endswith(".arff") else dataio.write_csv(ds)


# -- subcommands -----------------------------------------------------------


def cmd_synth(args) -> None:
    params = GenParams(image_size=args.size, jitter=args.jitter, background=args.background,
                       seed=args.seed)
    try:
        write_dataset(args.out, args.per_class, params)
    except OSError as exc:
        raise DataError(f"{args.out}: {exc.strerror}") from None


def cmd_segment(args) -> None:
    try:
        mask = segment(load_image(_read_bytes(args.input)), args.polarity)
    except ValueError as exc:
        raise DataError(f"{args.input}: {exc}") from None
    try:
        with open(args.out, "wb") as fh:
            fh.write(write_pgm(mask))
    except OSError as exc:
        raise DataError(f"{args.out}: {exc.strerror}") from None


def cmd_extract(args) -> None:
    text = _read_bytes(args.manifest).decode("utf-8")
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [c.strip() for c in rows[0][:2]] != ["filename", "class"]:
        raise DataError(f"{args.manifest}: expected header 'filename,class'")
    names, labels, vectors = [], [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 2:
            raise DataError(f"{args.manifest}: line {lineno}: expected 2 fields")
        path = os.path.join(args.input, row[0])
        try:
            vectors.append(image_features(load_image(_read_bytes(path)), args.polarity,
                                          args.connectivity))
        except (ValueError, EmptyMask) as exc:
            raise DataError(f"{path}: {exc}") from None
        names.append(row[0])
        labels.append(row[1])
    if not vectors:
        raise DataError(f"{args.manifest}: no images listed")
    ds = feature_dataset(vectors, labels, ids=names)
    _write_text(args.out, _dump_data(ds, args.out))


def _learner_specs(args, parser) -> list[LearnerSpec]:
    names = [n.strip() for chunk in args.learner for n in chunk.split(",") if n.strip()]
    for name in names:
        if name not in LEARNER_NAMES:
            parser.error(f"--learner: unknown learner {name!r} (choose from {', '.join(LEARNER_NAMES)})")
    if args.param and len(names) != 1:
        parser.error("--param needs exactly one --learner")
    if args.members is not None and "vote" not in names:
        parser.error("--members only applies to --learner vote")
    specs = []
    for name in names:
        try:
            specs.append(LearnerSpec.parse(
                name, args.param if len(names) == 1 else (),
                args.members if name == "vote" else None,
            ))
        except ValueError as exc:
            parser.error(f"--learner {name}: {exc}")
    return specs


def cmd_train(args, parser) -> None:
    specs = _learner_specs(args, parser)
    if len(specs) != 1:
        parser.error("train takes exactly one --learner")
    ds = _load_data(args.data)
    try:
        model = fit_learner(specs[0], ds, seed=args.seed, n_jobs=args.jobs)
    except ValueError as exc:
        raise DataError(f"{args.data}: {exc}") from None
    _write_text(args.out, dumps_model(model))


def cmd_predict(args) -> None:
    text = _read_bytes(args.model).decode("utf-8")
    try:
        model = loads_model(text)
    except ValueError as exc:
        raise DataError(f"{args.model}: {exc}") from None
    ds = _load_data(args.data)
    try:
        proba = model.predict_proba(ds.X)
    except ValueError as exc:
        raise DataError(f"{args.data}: {exc}") from None
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", "predicted"] + [f"p_{c}" for c in model.classes])
    ids = ds.ids if ds.ids is not None else [str(i) for i in range(len(ds))]
    for row_id, dist in zip(ids, proba):
        best = int(dist.argmax())
        writer.writerow([row_id, model.classes[best]] + [format_number(p) for p in dist])
    _write_text(args.out, buf.getvalue())


def cmd_crossval(args, parser) -> None:
    specs = _learner_specs(args, parser)
    ds = _load_data(args.data)
    try:
        reports = [cross_validate(ds, s, k=args.folds, seed=args.seed, n_jobs=args.jobs)
                   for s in specs]
    except ValueError as exc:
        raise DataError(f"{args.data}: {exc}") from None
    if args.report == "json":
        sys.stdout.write(json.dumps([r.to_dict() for r in reports], indent=2) + "\n")
    else:
        sys.stdout.write(render_table(reports))


# -- parser ----------------------------------------------------------------


def _connectivity(value: str) -> int:
    if value not in ("4", "8"):
        raise argparse.ArgumentTypeError("must be 4 or 8")
    return int(value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shapeclf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="render a synthetic shape image set")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--per-class", type=int, required=True, dest="per_class")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--jitter", type=float, default=0.5)
    p.add_argument("--size", type=int, default=64)
    p.add_argument("--background", type=int, default=255)

    p = sub.add_parser("segment", help="Otsu-threshold one image into a mask")
    p.add_argument("--in", required=True, dest="input")
    p.add_argument("--out", required=True)
    p.add_argument("--polarity", choices=POLARITIES, default="minority")

    p = sub.add_parser("extract", help="feature table from a manifest of images")
    p.add_argument("--in", required=True, dest="input", help="image directory")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True, help=".csv or .arff")
    p.add_argument("--connectivity", type=_connectivity, default=8)
    p.add_argument("--polarity", choices=POLARITIES, default="minority")

    def learner_args(p, multi: bool):
        p.add_argument("--learner", required=True, action="append",
                       help="one of " + ", ".join(LEARNER_NAMES)
                       + (" (repeat or comma-separate for several)" if multi else ""))
        p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
        p.add_argument("--members", default=None, help="vote members, comma list (may be empty)")
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--jobs", type=int, default=1, help="worker threads (0 = all cores)")

    p = sub.add_parser("train", help="train a model on a feature table")
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    learner_args(p, multi=False)

    p = sub.add_parser("predict", help="apply a saved model")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("crossval", help="stratified k-fold accuracy")
    p.add_argument("--data", required=True)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--report", choices=("table", "json"), default="table")
    learner_args(p, multi=True)

    for p in sub.choices.values():
        p.set_defaults(subparser=p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    sub = args.subparser
    try:
        if args.command == "synth":
            if args.per_class < 1:
                sub.error("--per-class must be >= 1")
            try:
                cmd_synth(args)
            except ValueError as exc:
                sub.error(str(exc))
        elif args.command == "segment":
            cmd_segment(args)
        elif args.command == "extract":
            cmd_extract(args)
        elif args.command == "train":
            cmd_train(args, sub)
        elif args.command == "predict":
            cmd_predict(args)
        elif args.command == "crossval":
            cmd_crossval(args, sub)
    except DataError as exc:
        print(f"shapeclf {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except UnicodeDecodeError as exc:
        print(f"shapeclf {args.command}: error: input is not UTF-8 text: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
