"""Harness CLI: ``train`` and ``predict`` subcommands."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .config import TrainConfig


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rpeak-harness")
    sub = parser.add_subparsers(dest="command", required=True)

    tr = sub.add_parser("train", help="train the sequence labeler")
    tr.add_argument("--dataset", help="pre-generated dataset directory")
    tr.add_argument("--gen-n", type=int, help="generate this many examples instead")
    tr.add_argument("--gen-scale", type=float, default=3.0)
    tr.add_argument("--gen-seed", type=int, default=0)
    tr.add_argument("--epochs", type=int, default=30)
    tr.add_argument("--steps", type=int, default=20)
    tr.add_argument("--batch-size", type=int, default=32)
    tr.add_argument("--lr", type=float, default=3e-4)
    tr.add_argument("--seed", type=int, default=0)
    tr.add_argument("--sampling", choices=("stream", "resample"), default="stream")
    tr.add_argument("--eval-dataset", help="held-out dataset evaluated each epoch")
    tr.add_argument("--out", required=True, help="output directory for model + history")

    pr = sub.add_parser("predict", help="write probability files for a record")
    pr.add_argument("--model", required=True, help="saved model (.keras)")
    pr.add_argument("--record", required=True, help="record file (.f32 with sidecar)")
    pr.add_argument("--out", required=True, help="output probability file (.f32)")

    return parser


def _cmd_train(args) -> int:
    from .train import train

    config = TrainConfig(
        dataset=args.dataset,
        generate_n=args.gen_n,
        generate_scale=args.gen_scale,
        generate_seed=args.gen_seed,
        epochs=args.epochs,
        steps_per_epoch=args.steps,
        batch_size=args.batch_size,
        learning_rate=args.lr,
        seed=args.seed,
        sampling=args.sampling,
        eval_dataset=args.eval_dataset,
    )
    _, history = train(config, out_dir=args.out)
    print(json.dumps({"out": args.out, "final_loss": history["loss"][-1]}))
    return 0


def _cmd_predict(args) -> int:
    import json as _json
    from pathlib import Path

    from .model import load_model
    from .predict import predict_record, write_probabilities

    record_path = Path(args.record)
    payload = np.frombuffer(record_path.read_bytes(), dtype="<f4")
    sidecar = record_path.with_suffix(".json")
    if sidecar.exists():
        with open(sidecar, "r", encoding="utf-8") as fh:
            shape = _json.load(fh).get("shape")
        if shape:
            payload = payload.reshape(shape).reshape(-1)

    model = load_model(args.model)
    probs, offsets = predict_record(model, payload)
    write_probabilities(args.out, probs, offsets, record_length=len(payload))
    print(json.dumps({"out": args.out, "n_segments": len(offsets)}))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "train":
            return _cmd_train(args)
        return _cmd_predict(args)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
