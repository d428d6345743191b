"""
Main entry point for the USV autonomy stack
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional

from rich.console import Console
from rich.table import Table

from usv_agent.agents.orchestrator import MissionOrchestrator
from usv_agent.agents.q_learning import evaluate_policy, trailing_mean_survival, train
from usv_agent.config.settings import Settings
from usv_agent.errors import ConfigError, UsvAgentError
from usv_agent.models.agent_models import EvalConfig, TrainConfig
from usv_agent.models.perception_models import CLASS_ORDER, ClassifyConfig, DatasetConfig, FlatImage
from usv_agent.models.planning_models import PlanConfig
from usv_agent.perception.classifier import classify
from usv_agent.perception.pipeline import evaluate_classifier, fit_classifier
from usv_agent.perception.synthetic import generate_dataset
from usv_agent.planning.min_angle import plan_min_angle
from usv_agent.services.artifact_service import ArtifactService
from usv_agent.services.dataset_service import DatasetService
from usv_agent.sim.world import object_footprint
from usv_agent.utils.logging_config import setup_logging

logger = logging.getLogger(__name__)

COMMANDS = ["run", "train", "eval", "dataset", "classify", "plan", "status"]

# Segments per quarter circle for obstacle footprints handed to the planner
PLAN_QUAD_SEGS = 2


class CommandContext:
    """Parsed arguments plus the shared services of one CLI invocation"""

    def __init__(self, args: argparse.Namespace, settings: Settings):
        self.args = args
        self.settings = settings
        self.artifacts = ArtifactService(settings)
        self.console = Console(quiet=args.quiet)

    def overrides(self) -> Dict[str, Any]:
        return {"seed": self.args.seed} if self.args.seed is not None else {}

    def load(self, model):
        if not self.args.config:
            raise ConfigError(f"--config is required for '{self.args.command}'")
        return self.artifacts.load_model(self.args.config, model, self.overrides())

    def config_dir(self) -> Path:
        return Path(self.args.config).parent

    def out_dir(self, fallback: Optional[str] = None) -> Path:
        return Path(self.args.out or fallback or self.settings.OUTPUT_DIR)

    def summary(self, title: str, rows: Dict[str, Any]) -> None:
        table = Table(title=title, show_header=False)
        for key, value in rows.items():
            table.add_row(str(key), f"{value:.4g}" if isinstance(value, float) else str(value))
        self.console.print(table)


def cmd_run(ctx: CommandContext) -> int:
    """Run a mission document and write its artifacts"""
    if not ctx.args.config:
        raise ConfigError("--config is required for 'run'")
    config = ctx.artifacts.load_mission_config(ctx.args.config, ctx.args.seed)
    orchestrator = MissionOrchestrator(ctx.settings, ctx.artifacts)
    summary = orchestrator.run(config, out_dir=Path(ctx.args.out) if ctx.args.out else None)
    rows = {"behavior": summary["behavior"], "status": summary["status"], "ticks": summary["ticks"]}
    rows.update({k: v for k, v in summary["metrics"].items() if isinstance(v, (int, float, str, bool))})
    ctx.summary("Mission", rows)
    return 0


def cmd_train(ctx: CommandContext) -> int:
    config: TrainConfig = ctx.load(TrainConfig)
    table, curve = train(config.env, config)
    out = ctx.out_dir()
    survival = trailing_mean_survival(curve, config.moving_average_window)
    ctx.artifacts.write_qtable_json(table, out / "qtable.json")
    ctx.artifacts.write_learning_curve_csv(curve, out / "learning_curve.csv")
    metrics = {
        "episodes": config.episodes,
        "seed": config.seed,
        "states_visited": len(table.values),
        "trailing_mean_survival": survival,
        "moving_average_window": config.moving_average_window,
    }
    ctx.artifacts.write_metrics_json(metrics, out / "train_metrics.json")
    ctx.summary("Training", metrics)
    return 0


def cmd_eval(ctx: CommandContext) -> int:
    config: EvalConfig = ctx.load(EvalConfig)
    table_file = ctx.args.table or config.table_file
    if table_file is None:
        raise ConfigError("eval needs a Q-table: set table_file or pass --table")
    path = Path(table_file)
    if not path.is_absolute() and not ctx.args.table:
        path = ctx.config_dir() / path
    table = ctx.artifacts.read_qtable_json(str(path))
    metrics = evaluate_policy(table, config.env, config.episodes, config.seed, jobs=ctx.args.jobs)
    payload = {"seed": config.seed, **metrics.model_dump()}
    ctx.artifacts.write_metrics_json(payload, ctx.out_dir() / "eval_metrics.json")
    ctx.summary("Evaluation", payload)
    return 0


def cmd_dataset(ctx: CommandContext) -> int:
    config: DatasetConfig = ctx.load(DatasetConfig)
    clouds = generate_dataset(config, jobs=ctx.args.jobs)
    root = ctx.out_dir(config.out_dir)
    counts = DatasetService(ctx.settings, ctx.artifacts).write_dataset(clouds, root)
    manifest = {"seed": config.seed, "samples_per_class": config.samples_per_class, "counts": counts}
    ctx.artifacts.write_metrics_json(manifest, root / "manifest.json")
    ctx.summary("Dataset", {"root": root, **counts})
    return 0


def cmd_classify(ctx: CommandContext) -> int:
    config: ClassifyConfig = ctx.load(ClassifyConfig)
    datasets = DatasetService(ctx.settings, ctx.artifacts)
    base = ctx.config_dir()
    train_set = datasets.read_dataset(base / config.train_dir)
    test_set = datasets.read_dataset(base / config.test_dir) if config.test_dir else train_set

    image_params = config.perception.image
    model = fit_classifier(train_set, image_params, config.normalize)
    accuracy, confusion, results = evaluate_classifier(model, test_set, image_params, config.normalize)

    out = ctx.out_dir()
    ctx.artifacts.write_confusion_csv(confusion, out / "confusion.csv")
    for label in CLASS_ORDER:
        mean_image = _as_flat(model.means[label], image_params.meters_per_pixel)
        ctx.artifacts.write_flat_image(mean_image, out / "means" / f"{label.value}.png")
    recall = {
        name: float(confusion.loc[name, name] / row_sum) if row_sum else 0.0
        for name, row_sum in confusion.sum(axis=1).items()
    }
    metrics = {
        "seed": config.seed,
        "normalize": config.normalize,
        "accuracy": accuracy,
        "samples": len(results),
        "trained_on": {label.value: count for label, count in model.trained_on.items()},
        "recall": recall,
        "self_check": _self_check(model),
    }
    ctx.artifacts.write_metrics_json(metrics, out / "classify_metrics.json")
    ctx.summary("Classification", {"accuracy": accuracy, "samples": len(results)})
    return 0


def _as_flat(channels, meters_per_pixel: float) -> FlatImage:
    return FlatImage(channels=channels, meters_per_pixel=meters_per_pixel, empty=not channels.any())


def _self_check(model) -> bool:
    """Every class mean classifies as its own class"""
    return all(
        classify(model, _as_flat(model.means[label], 1.0)).label == label
        for label in CLASS_ORDER
    )


def cmd_plan(ctx: CommandContext) -> int:
    config: PlanConfig = ctx.load(PlanConfig)
    world = ctx.artifacts.resolve_world(config.world, config.world_file, ctx.config_dir())
    footprints = [
        object_footprint(obj, margin=config.safety_margin, quad_segs=PLAN_QUAD_SEGS)
        for obj in world.objects
    ]
    path = plan_min_angle(config.start, config.goal, footprints, config.planner)
    out = ctx.out_dir()
    ctx.artifacts.write_path_csv(path, out / "path.csv")
    metrics = {"vertices": len(path.vertices), "length": path.length, "obstacles": len(footprints)}
    ctx.artifacts.write_metrics_json(metrics, out / "plan_metrics.json")
    ctx.summary("Plan", metrics)
    return 0


def cmd_status(ctx: CommandContext) -> int:
    status = MissionOrchestrator(ctx.settings, ctx.artifacts).get_status()
    ctx.summary("USV agent", {"status": status["status"], "behaviors": ", ".join(status["behaviors"]), **status["settings"]})
    return 0


HANDLERS = {
    "run": cmd_run,
    "train": cmd_train,
    "eval": cmd_eval,
    "dataset": cmd_dataset,
    "classify": cmd_classify,
    "plan": cmd_plan,
    "status": cmd_status,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="USV autonomy stack and marine simulator")
    parser.add_argument("command", choices=COMMANDS, help="Command to execute")
    parser.add_argument("--config", help="JSON configuration document")
    parser.add_argument("--seed", type=int, help="Override the seed in the configuration")
    parser.add_argument("--out", help="Output directory")
    parser.add_argument("--table", help="Q-table JSON for eval (overrides table_file)")
    parser.add_argument("--jobs", type=int, default=None, help="Parallel workers for eval and dataset")
    parser.add_argument("--quiet", action="store_true", help="Only warnings and errors, no summary")
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=None,
        help="Logging level"
    )
    parser.add_argument(
        "--log-file",
        help="Log file path (default: logs/usv_agent.log)"
    )
    return parser


def _report_error(error: Exception, exit_code: int) -> None:
    message = {"error": type(error).__name__, "message": str(error), "exit_code": exit_code}
    sys.stderr.write(json.dumps(message, sort_keys=True) + "\n")


def main(argv=None) -> int:
    """Main CLI interface; returns the process exit code"""
    args = build_parser().parse_args(argv)
    settings = Settings()
    if args.jobs is None:
        args.jobs = settings.DEFAULT_JOBS
    level = "WARNING" if args.quiet else (args.log_level or settings.LOG_LEVEL)
    setup_logging(level=level, log_file=args.log_file or settings.LOG_FILE, json_format=settings.LOG_JSON)

    try:
        return HANDLERS[args.command](CommandContext(args, settings))
    except UsvAgentError as e:
        logger.error(f"{args.command} failed: {e}", exc_info=logger.isEnabledFor(logging.DEBUG))
        _report_error(e, e.exit_code)
        return e.exit_code
    except ValueError as e:
        logger.error(f"{args.command} rejected its input: {e}", exc_info=True)
        _report_error(e, ConfigError.exit_code)
        return ConfigError.exit_code


if __name__ == "__main__":
    sys.exit(main())
