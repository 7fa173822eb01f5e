"""Command-line entry point.

Subcommands: ``generate`` (datasets), ``noise`` (spectral noise dumps),
``augment`` (artefact augmentation of a segment file), ``detect`` (peak
extraction from probability files), ``evaluate`` (detection scoring) and
``fit-dump`` (clean waveform + parameter echo for visual model fitting).

Exit codes: 0 success, 2 usage, 3 configuration/validation, 4 I/O.
"""

from __future__ import annotations

import argparse
import json
import os
import secrets
import sys
from pathlib import Path

import numpy as np

from . import __version__
from ._kernels import KERNEL_LANE
from .artefacts import augment as augment_segment
from .artefacts import load_bank
from .conditioning import normalize
from .dataio import (
    read_index_rows,
    read_json,
    read_matrix,
    read_vector,
    write_index_rows,
    write_json,
    write_vector,
)
from .errors import ConfigError, DataFormatError, SynthEcgError
from .metrics import (
    DEFAULT_TOLERANCE,
    aggregate,
    match_peaks,
    precision_recall_f1,
    snap_to_maximum,
)
from .noise import NoiseSpec, analytic_psd, empirical_psd, generate_noise
from .params import default_space, dump_space, load_space, sample_draw
from .pipeline import (
    GenerationConfig,
    config_from_manifest,
    export_dataset,
)
from .postprocess import (
    DEFAULT_THRESHOLD,
    MIN_DISTANCE,
    extract_peaks,
    segment_offsets,
    windowed_average,
)
from .rr import INTERVAL_FLOOR, generate_rr
from .waveform import synthesize_clean

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_IO = 4

_UNSET = object()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="synthecg",
        description="Domain-randomized synthetic ECG generation and r-wave detection tools",
    )
    parser.add_argument("--version", action="version", version=f"synthecg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="export a labeled synthetic dataset")
    gen.add_argument("--n", type=int, help="number of examples")
    gen.add_argument("--out", help="output directory")
    gen.add_argument("--seed", type=int, help="master seed; drawn from entropy if omitted")
    gen.add_argument("--scale", type=float, help="scaling coefficient for all groups")
    gen.add_argument("--scale-rr", type=float, help="override C for RR intervals")
    gen.add_argument("--scale-wave", type=float, help="override C for waveform shape")
    gen.add_argument("--scale-fiducial", type=float, help="override C for fiducial points")
    gen.add_argument("--scale-noise", type=float, help="override C for noise")
    gen.add_argument("--space", help="parameter space JSON (defaults to built-in baseline)")
    gen.add_argument("--artefacts", action="store_true", help="enable artefact augmentation")
    gen.add_argument("--artefact-bank", help="directory with bw/ma records")
    gen.add_argument("--format", choices=("f32", "csv"), default="f32")
    gen.add_argument("--segment-length", type=int, default=1000)
    gen.add_argument("--margin", type=int, default=1000)
    gen.add_argument("--zero-phase", action="store_true", help="zero-phase band-pass")
    gen.add_argument("--jobs", type=int, default=0, help="parallel workers (0 = all cores)")
    gen.add_argument("--config", help="JSON file of flag defaults, merged under explicit flags")
    gen.add_argument("--replay", help="manifest.json to reproduce bit-exactly (overrides flags)")

    noi = sub.add_parser("noise", help="emit a noise realization plus PSD columns")
    noi.add_argument("--rho", type=float, default=0.0)
    noi.add_argument("--alpha", type=float, default=0.0)
    noi.add_argument("--sigma", type=float, default=1.0)
    noi.add_argument("--n-samples", type=int, default=65536)
    noi.add_argument("--fs", type=float, default=250.0)
    noi.add_argument("--seed", type=int)
    noi.add_argument("--out", required=True, help="output directory")

    aug = sub.add_parser("augment", help="normalize a segment and add artefacts")
    aug.add_argument("--input", required=True, help="segment file (.f32/.csv)")
    aug.add_argument("--artefact-bank", required=True)
    aug.add_argument("--seed", type=int)
    aug.add_argument("--out", required=True, help="output file (.f32/.csv)")

    det = sub.add_parser("detect", help="extract r-wave indices from probabilities")
    det.add_argument("--ecg", required=True, help="record file (.f32/.csv)")
    det.add_argument("--prob", required=True, help="probability file: trace or segment matrix")
    det.add_argument("--out", required=True, help="output CSV of peak indices")
    det.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    det.add_argument("--min-distance", type=int, default=MIN_DISTANCE)

    eva = sub.add_parser("evaluate", help="score detections against ground truth")
    eva.add_argument("--truth", required=True, help="truth index CSV (record_id,i0,i1,...)")
    eva.add_argument("--detected", required=True, help="detected index CSV")
    eva.add_argument("--tolerance", type=int, default=DEFAULT_TOLERANCE)
    eva.add_argument("--per-record-out", help="optional CSV of per-record scores")
    eva.add_argument("--snap-ecg", help="record file: snap truth onto signal maxima first")
    eva.add_argument("--snap-window", type=int, default=16)

    fit = sub.add_parser("fit-dump", help="dump a clean waveform + parameter echo")
    fit.add_argument("--seed", type=int)
    fit.add_argument("--scale", type=float, default=1.0)
    fit.add_argument("--space", help="parameter space JSON")
    fit.add_argument("--seconds", type=float, default=10.0)
    fit.add_argument("--midpoint", action="store_true", help="use range midpoints, no sampling")
    fit.add_argument("--out", required=True, help="output directory")

    return parser


def _resolve_seed(seed: int | None) -> int:
    if seed is None:
        seed = secrets.randbits(63)
        print(f"seed drawn from entropy: {seed}", file=sys.stderr)
    return seed


def _merge_config_file(args: argparse.Namespace, argv: list[str]) -> None:
    """Apply config-file values for flags the user did not pass explicitly."""
    if not getattr(args, "config", None):
        return
    doc = read_json(args.config)
    if not isinstance(doc, dict):
        raise ConfigError(f"config file {args.config} must hold a JSON object")
    explicit = {tok.split("=", 1)[0] for tok in argv if tok.startswith("--")}
    for key, value in doc.items():
        flag = "--" + key.replace("_", "-")
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            raise ConfigError(f"config file sets unknown option {key!r}")
        if flag not in explicit:
            setattr(args, attr, value)


def _load_generation_space(args: argparse.Namespace):
    space = load_space(args.space) if args.space else default_space()
    if args.scale is not None:
        if args.scale < 0:
            raise ConfigError(f"--scale must be >= 0, got {args.scale}")
        space = space.with_scale(args.scale)
    overrides = {}
    for group in ("rr", "wave", "fiducial", "noise"):
        value = getattr(args, f"scale_{group}")
        if value is not None:
            if value < 0:
                raise ConfigError(f"--scale-{group} must be >= 0, got {value}")
            overrides[f"scale_{group}"] = value
    if overrides:
        from dataclasses import replace

        space = replace(space, **overrides)
    space.validate()
    return space


def _cmd_generate(args: argparse.Namespace) -> int:
    if args.replay:
        manifest = read_json(args.replay)
        config = config_from_manifest(manifest)
        out = args.out or manifest.get("out")
        if not out:
            raise ConfigError("--out is required when replaying")
        jobs = args.jobs if args.jobs else (os.cpu_count() or 1)
        export_dataset(config, out, jobs=jobs)
        print(json.dumps({"out": str(out), "n": config.n_examples, "replayed": True}))
        return EXIT_OK

    if args.n is None or args.out is None:
        raise ConfigError("generate requires --n and --out (or --replay)")
    if args.n < 1:
        raise ConfigError(f"--n must be >= 1, got {args.n}")
    seed = _resolve_seed(args.seed)
    space = _load_generation_space(args)
    config = GenerationConfig(
        space=space,
        master_seed=seed,
        n_examples=args.n,
        segment_length=args.segment_length,
        margin=args.margin,
        augment=args.artefacts,
        artefact_bank_dir=args.artefact_bank,
        zero_phase=args.zero_phase,
        export_format=args.format,
    )
    jobs = args.jobs if args.jobs else (os.cpu_count() or 1)
    manifest = export_dataset(config, args.out, jobs=jobs)
    print(
        json.dumps(
            {"out": str(args.out), "n": args.n, "seed": seed, "kernel_lane": KERNEL_LANE}
        )
    )
    return EXIT_OK


def _cmd_noise(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    spec = NoiseSpec(args.rho, args.alpha, args.sigma, args.n_samples, args.fs)
    spec.validate()
    x = generate_noise(spec, seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_vector(out / "noise_samples.csv", x)
    freqs, emp = empirical_psd(x, args.fs)
    ana = analytic_psd(freqs, args.rho, args.alpha, args.sigma)
    np.savetxt(
        out / "noise_psd.csv",
        np.column_stack([freqs, ana, emp]),
        fmt="%.10g",
        delimiter=",",
        header="frequency_hz,analytic_psd,empirical_psd",
        comments="",
    )
    write_json(
        out / "noise_manifest.json",
        {
            "seed": seed,
            "rho": args.rho,
            "alpha": args.alpha,
            "sigma": args.sigma,
            "n_samples": args.n_samples,
            "sampling_rate": args.fs,
        },
    )
    print(json.dumps({"out": str(out), "seed": seed, "n_samples": args.n_samples}))
    return EXIT_OK


def _cmd_augment(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    segment, _ = read_vector(args.input)
    bank = load_bank(args.artefact_bank)
    out = augment_segment(normalize(segment), bank, seed)
    write_vector(args.out, out, sampling_rate=bank.sampling_rate, seed=seed)
    print(json.dumps({"out": str(args.out), "seed": seed, "n_samples": len(out)}))
    return EXIT_OK


def _load_probability(args, ecg_length: int):
    prob, meta = read_matrix(args.prob)
    if prob.shape[0] == 1 and prob.shape[1] == ecg_length:
        return prob[0]
    offsets = meta.get("offsets")
    if offsets is None:
        offsets = segment_offsets(ecg_length)
        if len(offsets) != prob.shape[0]:
            raise ConfigError(
                f"probability matrix has {prob.shape[0]} segments but the record "
                f"needs {len(offsets)}; provide an 'offsets' sidecar field"
            )
    traces = [prob[k, : min(prob.shape[1], ecg_length - offsets[k])] for k in range(prob.shape[0])]
    return windowed_average(traces, offsets, ecg_length)


def _cmd_detect(args: argparse.Namespace) -> int:
    ecg, _ = read_vector(args.ecg)
    avg = _load_probability(args, len(ecg))
    result = extract_peaks(
        avg, ecg, threshold=args.threshold, min_distance=args.min_distance
    )
    write_index_rows(args.out, [("0", result.indices)])
    print(
        json.dumps(
            {
                "out": str(args.out),
                "n_peaks": int(len(result.indices)),
                "diagnostics": result.diagnostics,
                "threshold": args.threshold,
                "min_distance": args.min_distance,
            }
        )
    )
    return EXIT_OK


def _cmd_evaluate(args: argparse.Namespace) -> int:
    truth_rows = dict(read_index_rows(args.truth))
    detected_rows = dict(read_index_rows(args.detected))
    missing = sorted(set(truth_rows) - set(detected_rows))
    if missing:
        raise ConfigError(f"detected file lacks records {missing[:5]}")

    snap_signal = None
    if args.snap_ecg:
        snap_signal, _ = read_vector(args.snap_ecg)

    per_record = []
    for record_id in truth_rows:
        truth = truth_rows[record_id]
        if snap_signal is not None:
            truth = snap_to_maximum(truth, snap_signal, window=args.snap_window)
        report = match_peaks(truth, detected_rows[record_id], tolerance=args.tolerance)
        precision, recall, f1 = precision_recall_f1(report)
        per_record.append(
            {
                "record": record_id,
                "tp": report.tp,
                "fp": report.fp,
                "fn": report.fn,
                "precision": precision,
                "recall": recall,
                "f1": f1,
            }
        )

    agg = aggregate([r["f1"] for r in per_record])
    doc = {
        "tolerance": args.tolerance,
        "n_records": agg.n_records,
        "mean_f1": agg.mean,
        "p10_f1": agg.p10,
        "p90_f1": agg.p90,
        "records": per_record,
    }
    print(json.dumps(doc, indent=2))
    if args.per_record_out:
        with open(args.per_record_out, "w", encoding="utf-8") as fh:
            fh.write("record,tp,fp,fn,precision,recall,f1\n")
            for r in per_record:
                fh.write(
                    f"{r['record']},{r['tp']},{r['fp']},{r['fn']},"
                    f"{r['precision']:.6f},{r['recall']:.6f},{r['f1']:.6f}\n"
                )
    return EXIT_OK


def _cmd_fit_dump(args: argparse.Namespace) -> int:
    space = load_space(args.space) if args.space else default_space()
    if args.scale is not None:
        if args.scale < 0:
            raise ConfigError(f"--scale must be >= 0, got {args.scale}")
        space = space.with_scale(args.scale)
    space.validate()
    if args.midpoint:
        seed = None
        draw = space.midpoint_draw()
    else:
        seed = _resolve_seed(args.seed)
        draw = sample_draw(space, seed)
    fs = space.sampling_rate
    total = int(round(args.seconds * fs))
    n_beats = int(np.ceil(args.seconds / INTERVAL_FLOOR)) + 3
    series = generate_rr(
        draw.mu, draw.breathing_coupling, draw.breathing_freq, draw.gamma_sd, n_beats, seed or 0
    )
    clean = synthesize_clean(draw, series, total, fs)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    t = np.arange(total) / fs
    np.savetxt(
        out / "clean_waveform.csv",
        np.column_stack([t, clean.signal]),
        fmt="%.10g",
        delimiter=",",
        header="time_s,amplitude",
        comments="",
    )
    write_json(
        out / "fit_parameters.json",
        {
            "seed": seed,
            "scale": args.scale,
            "sampling_rate": fs,
            "draw": draw.to_json_dict(),
            "r_indices": [int(i) for i in clean.r_indices],
        },
    )
    print(json.dumps({"out": str(out), "n_samples": total, "n_beats": len(series.intervals)}))
    return EXIT_OK


_COMMANDS = {
    "generate": _cmd_generate,
    "noise": _cmd_noise,
    "augment": _cmd_augment,
    "detect": _cmd_detect,
    "evaluate": _cmd_evaluate,
    "fit-dump": _cmd_fit_dump,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "generate":
            _merge_config_file(args, argv)
        return _COMMANDS[args.command](args)
    except (ConfigError, DataFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SynthEcgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
