"""Command-line front end for reproducible dataset characterization runs.

Commands: ``info`` (metric table and profile JSON), ``resample`` (base or
decoupling-hybrid resampling, writing the transformed dataset plus report),
``partition`` (stratified fold pairs), ``evaluate`` (train/predict/score
with the built-in classifier), ``concurrence`` (co-occurrence CSV) and
``rerun`` (re-execute a recorded manifest).

Every command writing files also writes a manifest capturing the argument
vector, seed and input/output paths; re-running the manifest reproduces the
outputs byte for byte.  Human-readable tables go to standard output, JSON
and CSV reports to files.  Exit codes: 0 success, 2 unreadable or malformed
input, 3 bad parameters, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from . import __version__
from .arff import MulanFormatError, parse_mulan, write_mulan
from .dataset import MultiLabelDataset, label_matrix
from .decoupling import DecoupleConfig, HybridConfig, hybrid_resample
from .evaluation import evaluate
from .metrics import ImbalanceProfile, concurrence_csv, concurrence_export, profile
from .mlknn import mlknn_predict, mlknn_train
from .partitioning import fold_datasets, stratified_kfold
from .resampling import (
    MLENNConfig,
    MLROSConfig,
    MLSMOTEConfig,
    ResampleConfig,
    resample,
)

SEED_ENV_VAR = "MLRESAMPLE_SEED"


class _ParameterError(Exception):
    """Bad command-line parameters (exit code 3)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ParameterError(message)


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise _ParameterError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from None


def _read_dataset(arff_path: str, xml_path: str) -> MultiLabelDataset:
    arff_text = Path(arff_path).read_text()
    xml_text = Path(xml_path).read_text()
    return parse_mulan(arff_text, xml_text)


def _write_dataset(d: MultiLabelDataset, arff_path: Path, xml_path: Path) -> None:
    arff_text, xml_text = write_mulan(d)
    arff_path.write_text(arff_text)
    xml_path.write_text(xml_text)


def _digest(payload: dict | None) -> str | None:
    if payload is None:
        return None
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canonical.encode()).hexdigest()


def _write_manifest(
    path: Path,
    command: str,
    argv: list[str],
    seed: int | None,
    parameters: dict,
    inputs: dict,
    outputs: dict,
    profile_before: ImbalanceProfile | None,
    profile_after: ImbalanceProfile | None,
) -> None:
    manifest = {
        "tool": "mlresample",
        "version": __version__,
        "command": command,
        "argv": argv,
        "seed": seed,
        "parameters": parameters,
        "inputs": inputs,
        "outputs": outputs,
        "profile_before_digest": _digest(profile_before.to_dict() if profile_before else None),
        "profile_after_digest": _digest(profile_after.to_dict() if profile_after else None),
    }
    path.write_text(json.dumps(manifest, indent=2) + "\n")


def _warn_undefined(prof: ImbalanceProfile, d: MultiLabelDataset) -> None:
    undefined = prof.undefined_labels
    if undefined:
        names = ", ".join(d.labels[i] for i in undefined)
        print(
            f"warning: labels with no occurrences excluded from MeanIR: {names}",
            file=sys.stderr,
        )


def _info_table(d: MultiLabelDataset, prof: ImbalanceProfile) -> str:
    header = ("Dataset", "Inst.", "Attr.", "Labels", "LSet", "Card", "Dens", "MeanIR", "SCUMBLE", "TCS")
    row = (
        d.name,
        str(d.n),
        str(len(d.attributes)),
        str(d.k),
        str(prof.distinct_labelsets),
        f"{prof.card:.4f}",
        f"{prof.dens:.4f}",
        f"{prof.mean_ir:.4f}",
        f"{prof.scumble:.4f}",
        f"{prof.tcs:.3f}",
    )
    widths = [max(len(h), len(v)) for h, v in zip(header, row)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    return fmt.format(*header) + "\n" + fmt.format(*row)


def cmd_info(args, argv: list[str]) -> int:
    d = _read_dataset(args.arff, args.xml)
    prof = profile(d)
    _warn_undefined(prof, d)
    print(_info_table(d, prof))
    if args.out:
        out = Path(args.out)
        out.write_text(prof.to_json() + "\n")
        _write_manifest(
            out.with_name(out.name + ".manifest.json"),
            "info",
            argv,
            None,
            {},
            {"arff": args.arff, "xml": args.xml},
            {"profile": str(out)},
            prof,
            None,
        )
    return 0


def _method_config(args) -> MLROSConfig | MLENNConfig | MLSMOTEConfig:
    try:
        if args.method == "mlros":
            return MLROSConfig(p=args.p)
        if args.method == "mlenn":
            return MLENNConfig(ht=args.ht, nn=args.nn)
        return MLSMOTEConfig(k_neighbors=args.k)
    except ValueError as exc:
        raise _ParameterError(str(exc)) from exc


def cmd_resample(args, argv: list[str]) -> int:
    d = _read_dataset(args.arff, args.xml)
    seed = args.seed if args.seed is not None else _default_seed()
    config = ResampleConfig(method=_method_config(args), seed=seed)
    suffix = config.method_name
    if args.remedial:
        try:
            decouple = DecoupleConfig.from_spec(args.remedial, drop_empty=args.drop_empty)
        except ValueError as exc:
            raise _ParameterError(str(exc)) from exc
        out, report = hybrid_resample(d, HybridConfig(decouple=decouple, resample=config))
        suffix = f"{decouple.spec_string()}-{suffix}"
    else:
        out, report = resample(d, config)
    out = out.replace_instances(out.instances, name=f"{d.name}-{suffix}")

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    arff_path = out_dir / "resampled.arff"
    xml_path = out_dir / "resampled.xml"
    _write_dataset(out, arff_path, xml_path)
    (out_dir / "report.json").write_text(json.dumps(report.to_dict(), indent=2) + "\n")
    parameters = {
        "method": args.method,
        "p": args.p,
        "ht": args.ht,
        "nn": args.nn,
        "k": args.k,
        "remedial": args.remedial,
        "drop_empty": args.drop_empty,
    }
    _write_manifest(
        out_dir / "manifest.json",
        "resample",
        argv,
        seed,
        parameters,
        {"arff": args.arff, "xml": args.xml},
        {
            "arff": str(arff_path),
            "xml": str(xml_path),
            "report": str(out_dir / "report.json"),
        },
        report.profile_before,
        report.profile_after,
    )
    print(
        f"{d.name}: {report.instances_before} -> {report.instances_after} instances "
        f"(+{len(report.added)} -{len(report.removed)}, {len(report.decoupled)} decoupled)"
    )
    return 0


def cmd_partition(args, argv: list[str]) -> int:
    d = _read_dataset(args.arff, args.xml)
    seed = args.seed if args.seed is not None else _default_seed()
    try:
        assignment = stratified_kfold(d, args.folds, seed)
    except ValueError as exc:
        raise _ParameterError(str(exc)) from exc
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs = {}
    for f in range(args.folds):
        train, test = fold_datasets(d, assignment, f)
        for part, ds in (("train", train), ("test", test)):
            arff_path = out_dir / f"fold{f}-{part}.arff"
            xml_path = out_dir / f"fold{f}-{part}.xml"
            _write_dataset(ds, arff_path, xml_path)
            outputs[f"fold{f}-{part}"] = str(arff_path)
    csv_path = out_dir / "folds.csv"
    csv_path.write_text(assignment.to_csv())
    outputs["assignment"] = str(csv_path)
    _write_manifest(
        out_dir / "manifest.json",
        "partition",
        argv,
        seed,
        {"folds": args.folds},
        {"arff": args.arff, "xml": args.xml},
        outputs,
        profile(d),
        None,
    )
    sizes = [len(assignment.test_indices(f)) for f in range(args.folds)]
    print(f"{d.name}: {args.folds} folds, test sizes {sizes}")
    return 0


def cmd_evaluate(args, argv: list[str]) -> int:
    train_xml = args.train_xml or str(Path(args.train_arff).with_suffix(".xml"))
    test_xml = args.test_xml or str(Path(args.test_arff).with_suffix(".xml"))
    train = _read_dataset(args.train_arff, train_xml)
    test = _read_dataset(args.test_arff, test_xml)
    seed = args.seed if args.seed is not None else _default_seed()
    if args.classifier != "mlknn":
        raise _ParameterError(f"unknown classifier {args.classifier!r}")
    try:
        model = mlknn_train(train, k_nn=args.k, smoothing=args.smoothing)
        predictions = mlknn_predict(model, test)
    except ValueError as exc:
        raise _ParameterError(str(exc)) from exc
    report = evaluate(label_matrix(test), predictions)
    for key, value in report.to_dict().items():
        print(f"{key}: {value}")
    if args.out:
        out = Path(args.out)
        out.write_text(report.to_json() + "\n")
        _write_manifest(
            out.with_name(out.name + ".manifest.json"),
            "evaluate",
            argv,
            seed,
            {"classifier": args.classifier, "k": args.k, "smoothing": args.smoothing},
            {
                "train_arff": args.train_arff,
                "train_xml": train_xml,
                "test_arff": args.test_arff,
                "test_xml": test_xml,
            },
            {"report": str(out)},
            None,
            None,
        )
    return 0


def cmd_concurrence(args, argv: list[str]) -> int:
    d = _read_dataset(args.arff, args.xml)
    try:
        rows = concurrence_export(d, args.top, args.top)
    except ValueError as exc:
        raise _ParameterError(str(exc)) from exc
    csv_text = concurrence_csv(rows)
    if args.out:
        out = Path(args.out)
        out.write_text(csv_text)
        _write_manifest(
            out.with_name(out.name + ".manifest.json"),
            "concurrence",
            argv,
            None,
            {"top": args.top},
            {"arff": args.arff, "xml": args.xml},
            {"csv": str(out)},
            profile(d),
            None,
        )
    else:
        print(csv_text, end="")
    return 0


def cmd_rerun(args, argv: list[str]) -> int:
    try:
        manifest = json.loads(Path(args.manifest).read_text())
        recorded = manifest["argv"]
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        raise MulanFormatError(f"cannot load manifest {args.manifest}: {exc}") from exc
    if not isinstance(recorded, list) or not recorded:
        raise MulanFormatError(f"manifest {args.manifest} records no argv")
    return main([str(a) for a in recorded])


def build_parser() -> _Parser:
    parser = _Parser(prog="mlresample", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_info = sub.add_parser("info", help="print the dataset characterization table")
    p_info.add_argument("arff")
    p_info.add_argument("xml")
    p_info.add_argument("--out", help="write the profile JSON here")
    p_info.set_defaults(func=cmd_info)

    p_res = sub.add_parser("resample", help="rebalance a dataset")
    p_res.add_argument("arff")
    p_res.add_argument("xml")
    p_res.add_argument("--method", required=True, choices=("mlros", "mlenn", "mlsmote"))
    p_res.add_argument("--p", type=float, default=25.0, help="oversampling percentage (mlros)")
    p_res.add_argument("--ht", type=float, default=0.75, help="labelset distance threshold (mlenn)")
    p_res.add_argument("--nn", type=int, default=3, help="neighbor count (mlenn)")
    p_res.add_argument("--k", type=int, default=5, help="neighbor count (mlsmote)")
    p_res.add_argument(
        "--remedial",
        metavar="MODE",
        help="decouple first: 'mean' or a percentile preset such as p25, p37, p50, p62, p75",
    )
    p_res.add_argument(
        "--drop-empty",
        action="store_true",
        help="discard decoupled sides left without labels",
    )
    p_res.add_argument("--seed", type=int, default=None)
    p_res.add_argument("--out-dir", required=True)
    p_res.set_defaults(func=cmd_resample)

    p_part = sub.add_parser("partition", help="write stratified train/test fold pairs")
    p_part.add_argument("arff")
    p_part.add_argument("xml")
    p_part.add_argument("--folds", type=int, default=10)
    p_part.add_argument("--seed", type=int, default=None)
    p_part.add_argument("--out-dir", required=True)
    p_part.set_defaults(func=cmd_partition)

    p_eval = sub.add_parser("evaluate", help="train on one dataset, score another")
    p_eval.add_argument("train_arff")
    p_eval.add_argument("test_arff")
    p_eval.add_argument("--train-xml", help="default: train ARFF path with .xml suffix")
    p_eval.add_argument("--test-xml", help="default: test ARFF path with .xml suffix")
    p_eval.add_argument("--classifier", default="mlknn")
    p_eval.add_argument("--k", type=int, default=10, help="neighbor count")
    p_eval.add_argument("--smoothing", type=float, default=1.0)
    p_eval.add_argument("--seed", type=int, default=None)
    p_eval.add_argument("--out", help="write the evaluation report JSON here")
    p_eval.set_defaults(func=cmd_evaluate)

    p_conc = sub.add_parser("concurrence", help="export label co-occurrence data")
    p_conc.add_argument("arff")
    p_conc.add_argument("xml")
    p_conc.add_argument("--top", type=int, required=True, help="majority and minority label count")
    p_conc.add_argument("--out", help="write the CSV here (default: stdout)")
    p_conc.set_defaults(func=cmd_concurrence)

    p_rerun = sub.add_parser("rerun", help="re-execute a recorded manifest")
    p_rerun.add_argument("manifest")
    p_rerun.set_defaults(func=cmd_rerun)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    try:
        return args.func(args, argv)
    except _ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (MulanFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (AssertionError, RuntimeError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
