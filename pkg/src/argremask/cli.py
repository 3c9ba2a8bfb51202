# -*- coding: utf-8 -*-
"""
:Module:            argremask.cli
:Synopsis:          The ``argremask`` command line: training, generation, scoring, evaluation and ablation
:Usage:             ``argremask generate --model m.json --input one.json --refine 3``
:Example:           ``exit_code = run_command(['ablate', '--synthetic', '20', '--iterations', '0,1,2,3'])``
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from typing import Callable, Optional, Sequence

from . import constants as const
from . import corpus, denoiser, errors, evaluation, sufficiency
from .config import RunConfig
from .core import Summarizer
from .corpus import ArgumentInstance
from .utils import core_utils, log_utils, version

# Initialize logging
logger = log_utils.initialize_logging(__name__)

_EXIT = const.EXIT_CODES
_EVAL = const.EVAL_DEFAULTS
_LAYOUT_BOTH = 'both'


class _ArgumentParser(argparse.ArgumentParser):
    """Argument parser that raises :py:exc:`argremask.errors.exceptions.UsageError` instead of exiting."""

    def error(self, message: str):
        raise errors.exceptions.UsageError(message=f'{self.prog}: {message}')


# -----------------------------
# Parser
# -----------------------------


def _build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(prog=const.PACKAGE_NAME,
                             description='Sufficiency-guided masked-diffusion summarization of arguments.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {version.get_full_version()}')
    parser.add_argument('--config', help='configuration file (YAML, JSON or flat key = value text)')
    parser.add_argument('--seed', type=int, help='run seed for every random sub-stream')
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('-v', '--verbose', action='store_true', help='log debug messages to stderr')
    verbosity.add_argument('-q', '--quiet', action='store_true', help='log errors only')
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    train = commands.add_parser('train-denoiser', help='train a denoiser on reference summaries')
    train.add_argument('--data', required=True, help='training dataset')
    train.add_argument('--format', dest='data_format', choices=sorted(const.DATASET_FORMATS.VALID))
    train.add_argument('--out', required=True, help='model archive to write')
    train.add_argument('--model-kind', dest='model_kind', choices=sorted(const.DENOISER_DEFAULTS.KINDS))
    train.add_argument('--epochs', type=int)
    train.add_argument('--mask-ratio', dest='mask_ratio', type=float)
    train.add_argument('--canvas-length', dest='canvas_length', type=int)
    train.add_argument('--min-count', dest='min_count', type=int)
    train.set_defaults(handler=_train_denoiser)

    classifier = commands.add_parser('train-classifier', help='train the sufficiency classifier on perturbed spans')
    classifier.add_argument('--data', required=True, help='dataset to perturb')
    classifier.add_argument('--format', dest='data_format', choices=sorted(const.DATASET_FORMATS.VALID))
    classifier.add_argument('--out', required=True, help='classifier archive to write')
    classifier.add_argument('--epochs', dest='classifier_epochs', type=int)
    classifier.add_argument('--lr', dest='classifier_lr', type=float)
    classifier.add_argument('--k-per-type', dest='k_per_type', type=int)
    classifier.set_defaults(handler=_train_classifier)

    generate = commands.add_parser('generate', help='generate (and optionally refine) summaries')
    generate.add_argument('--model', dest='model_path', help='denoiser archive')
    generate.add_argument('--input', required=True, help='instances to summarize')
    generate.add_argument('--format', dest='data_format', choices=sorted(const.DATASET_FORMATS.VALID))
    generate.add_argument('--refine', dest='refine_iterations', type=int, help='refinement iterations')
    _add_scorer_flags(generate)
    generate.add_argument('--granularity', choices=sorted(const.MASK_DEFAULTS.GRANULARITIES))
    generate.add_argument('--trace', help='write the refinement traces as JSON lines')
    generate.add_argument('--out', help='write the summary records here instead of stdout')
    generate.set_defaults(handler=_generate)

    score = commands.add_parser('score', help='report the sufficiency of an existing summary')
    score.add_argument('--input', required=True, help='the instance(s) the summary was written for')
    score.add_argument('--format', dest='data_format', choices=sorted(const.DATASET_FORMATS.VALID))
    score.add_argument('--id', dest='instance_id', help='instance to score against (the first by default)')
    summary = score.add_mutually_exclusive_group(required=True)
    summary.add_argument('--summary', help='summary text')
    summary.add_argument('--summary-file', help='file holding the summary text')
    _add_scorer_flags(score)
    score.add_argument('--model', dest='model_path', help='denoiser archive whose vocabulary is used')
    score.add_argument('--out', help='write the report here instead of stdout')
    score.set_defaults(handler=_score)

    evaluate = commands.add_parser('evaluate', help='score predicted summaries against references')
    evaluate.add_argument('--data', required=True, help='instances with reference summaries')
    evaluate.add_argument('--format', dest='data_format', choices=sorted(const.DATASET_FORMATS.VALID))
    evaluate.add_argument('--predictions', required=True, help="JSON lines with 'id' and 'summary'")
    evaluate.add_argument('--csv', action='store_true', help='render the table as CSV')
    evaluate.add_argument('--external-command', dest='external_command', help='external metric command')
    evaluate.add_argument('--workers', type=int)
    evaluate.add_argument('--out', help='also write the JSON report here')
    evaluate.set_defaults(handler=_evaluate)

    ablate = commands.add_parser('ablate', help='scorer variant by iteration count ablation')
    source = ablate.add_mutually_exclusive_group(required=True)
    source.add_argument('--data', help='instances with reference summaries')
    source.add_argument('--synthetic', type=int, metavar='N',
                        help='use N synthetic instances with an off-topic sentence and a memorizing denoiser')
    ablate.add_argument('--format', dest='data_format', choices=sorted(const.DATASET_FORMATS.VALID))
    ablate.add_argument('--model', dest='model_path', help='denoiser archive (required with --data)')
    ablate.add_argument('--classifier', dest='classifier_path', help='sufficiency classifier archive')
    ablate.add_argument('--iterations', default='0,1,2,3', help='comma-separated iteration counts')
    ablate.add_argument('--variants', default='none,heuristic', help='comma-separated scorer variants')
    ablate.add_argument('--layout', choices=(_EVAL.LAYOUT_CELLS, _EVAL.LAYOUT_ITERATIONS, _EVAL.LAYOUT_VARIANTS,
                                             _LAYOUT_BOTH))
    ablate.add_argument('--csv', action='store_true', help='render the table as CSV')
    ablate.add_argument('--external-command', dest='external_command', help='external metric command')
    ablate.add_argument('--workers', type=int)
    ablate.add_argument('--out', help='also write the JSON table here')
    ablate.set_defaults(handler=_ablate)
    return parser


def _add_scorer_flags(_parser: argparse.ArgumentParser) -> None:
    _parser.add_argument('--scorer', choices=sorted(const.SUFFICIENCY_DEFAULTS.SCORERS))
    _parser.add_argument('--classifier', dest='classifier_path', help='sufficiency classifier archive')


def _config_overrides(_args: argparse.Namespace) -> dict:
    keys = set(RunConfig.keys())
    return {_key: _value for _key, _value in vars(_args).items() if _key in keys and _value is not None}


def _parse_list(_text: str, _name: str, _cast: Callable = str) -> list:
    try:
        values = [_cast(_item.strip()) for _item in _text.split(',') if _item.strip()]
    except ValueError as exc:
        raise errors.exceptions.UsageError(message=f'--{_name}: cannot parse {_text!r}') from exc
    if not values:
        raise errors.exceptions.UsageError(message=f'--{_name}: at least one value is required')
    return values


def _emit(_text: str, _out: Optional[str] = None) -> None:
    if _out:
        core_utils.write_text(_out, _text)
    else:
        sys.stdout.write(_text)


# -----------------------------
# Subcommands
# -----------------------------


def _train_denoiser(args: argparse.Namespace, summarizer: Summarizer) -> None:
    instances = summarizer.load_dataset(args.data)
    report = summarizer.train_denoiser(instances)
    summarizer.save_model(args.out)
    _emit(core_utils.dump_json(report.to_dict(), indent=2) + '\n')


def _train_classifier(args: argparse.Namespace, summarizer: Summarizer) -> None:
    instances = summarizer.load_dataset(args.data)
    model, data = summarizer.train_classifier(instances)
    sufficiency.save_classifier(model, args.out)
    result = {
        'spans': len(data),
        'unavailable': list(data.unavailable),
        'train_accuracy': sufficiency.evaluate_classifier(model, data.spans),
        'initial_loss': model.loss_history[0],
        'final_loss': model.loss_history[-1],
        'config': summarizer.config.echo(),
    }
    _emit(core_utils.dump_json(result, indent=2) + '\n')


def _generate(args: argparse.Namespace, summarizer: Summarizer) -> None:
    instances = summarizer.load_dataset(args.input)
    summarizer.idf = summarizer.idf or sufficiency.IdfTable.from_instances(instances)
    records, traces = [], []
    for _instance in instances:
        record, trace = summarizer.summarize(_instance)
        records.append(core_utils.dump_json(record) + '\n')
        if trace is not None:
            traces.append(trace.to_jsonl())
        logger.info(f"Summarized '{_instance.id}' ({record['terminated_by'] or 'no refinement'})")
    _emit(''.join(records), args.out)
    if args.trace:
        core_utils.write_text(args.trace, ''.join(traces))


def _select_instance(_instances: Sequence[ArgumentInstance], _identifier: Optional[str]) -> ArgumentInstance:
    if not _instances:
        raise errors.exceptions.EmptyDatasetError()
    if _identifier is None:
        return _instances[0]
    for _instance in _instances:
        if _instance.id == _identifier:
            return _instance
    raise errors.exceptions.UsageError(message=f"--id: no instance '{_identifier}' in the input")


def _score(args: argparse.Namespace, summarizer: Summarizer) -> None:
    instances = summarizer.load_dataset(args.input)
    instance = _select_instance(instances, args.instance_id)
    summary = args.summary if args.summary is not None else core_utils.read_text(args.summary_file)
    summarizer.idf = summarizer.idf or sufficiency.IdfTable.from_instances(instances)
    _emit(core_utils.dump_json(summarizer.score(instance, summary.strip()), indent=2) + '\n', args.out)


def _read_predictions(_path: str) -> dict[str, str]:
    predictions = {}
    for _number, _line in enumerate(core_utils.read_text(_path).splitlines(), start=1):
        if not _line.strip():
            continue
        try:
            record = json.loads(_line)
            predictions[str(record['id'])] = str(record['summary'])
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise errors.exceptions.DatasetParseError(file=_path, line=_number,
                                                      message="Expected a JSON object with 'id' and 'summary'.") from exc
    return predictions


def _evaluate(args: argparse.Namespace, summarizer: Summarizer) -> None:
    instances = {_instance.id: _instance for _instance in summarizer.load_dataset(args.data)}
    predictions = _read_predictions(args.predictions)
    missing = sorted(set(predictions) - set(instances))
    if missing:
        raise errors.exceptions.DataMismatchError(data=(args.predictions, args.data))
    pairs = [(instances[_id], _summary) for _id, _summary in predictions.items()]
    report = summarizer.evaluate(pairs)
    _emit(report.render(as_csv=args.csv) + '\n')
    if args.out:
        core_utils.write_text(args.out, report.to_json() + '\n')


def _synthetic_setup(_count: int, _summarizer: Summarizer):
    """Builds the synthetic instances, a denoiser memorizing their references and the off-topic start states."""
    seed = _summarizer.config.seed
    instances = corpus.synthetic_corpus(_count, seed)
    noisy = [corpus.inject_off_topic(_instance, _rng) for _instance, _rng in _off_topic_streams(instances, seed)]
    vocab = corpus.build_vocabulary(corpus.corpus_texts(instances) + noisy)
    training = replace(_summarizer.config.training_config(), model_kind=const.DENOISER_DEFAULTS.KIND_ORACLE, epochs=0)
    model, _ = denoiser.train_denoiser(denoiser.build_training_pairs(instances, vocab), training, vocab)
    _summarizer.model = model
    return instances, evaluation.off_topic_initial_fn(model, seed)


def _off_topic_streams(_instances: Sequence[ArgumentInstance], _seed: int):
    for _instance in _instances:
        yield _instance, core_utils.get_rng(_seed, const.RNG_STREAMS.SYNTHETIC, _instance.id, 'off-topic')


def _ablate(args: argparse.Namespace, summarizer: Summarizer) -> None:
    counts = _parse_list(args.iterations, 'iterations', int)
    variants = _parse_list(args.variants, 'variants')
    unknown = [_variant for _variant in variants if _variant not in const.SUFFICIENCY_DEFAULTS.SCORERS]
    if unknown or any(_count < 0 for _count in counts):
        raise errors.exceptions.UsageError(message=f'invalid variants or iteration counts: {args.variants} / {args.iterations}')
    initial_fn = None
    if args.synthetic is not None:
        if args.synthetic < 1:
            raise errors.exceptions.UsageError(message='--synthetic: N must be positive')
        instances, initial_fn = _synthetic_setup(args.synthetic, summarizer)
    else:
        instances = summarizer.load_dataset(args.data)
    summarizer.idf = summarizer.idf or sufficiency.IdfTable.from_instances(instances)
    table = summarizer.ablate(instances, variants, counts, initial_fn=initial_fn)
    layout = args.layout
    if layout is None:
        layout = _EVAL.LAYOUT_ITERATIONS if len(variants) == 1 else _EVAL.LAYOUT_VARIANTS if len(counts) == 1 else _LAYOUT_BOTH
    if layout == _LAYOUT_BOTH:
        rendered = '\n\n'.join((table.render(_EVAL.LAYOUT_ITERATIONS, args.csv), table.render(_EVAL.LAYOUT_VARIANTS, args.csv)))
    else:
        rendered = table.render(layout, args.csv)
    _emit(rendered + '\n')
    if args.out:
        core_utils.write_text(args.out, core_utils.dump_json(table.to_dict(), indent=2) + '\n')


# -----------------------------
# Entry Points
# -----------------------------


def _resolve_config(_args: argparse.Namespace) -> RunConfig:
    try:
        config = RunConfig.from_sources(_args.config, _config_overrides(_args))
        config.validate()
    except errors.exceptions.InvalidParameterError as exc:
        raise errors.exceptions.UsageError(message=str(exc)) from exc
    return config


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    """This function runs one subcommand and returns its exit code.

    :param argv: The command-line arguments (``sys.argv[1:]`` by default)
    :type argv: list, None
    :returns: ``0`` on success, ``1`` on a usage error and ``2`` on a runtime failure
    """
    try:
        args = _build_parser().parse_args(argv)
        config = _resolve_config(args)
        level = 'debug' if args.verbose else 'error' if args.quiet else config.log_level
        log_utils.set_package_level(level)
        args.handler(args, Summarizer(config=config))
    except SystemExit as exc:
        return int(exc.code or 0)
    except errors.exceptions.UsageError as exc:
        errors.handlers.eprint(errors.handlers.format_diagnostic(exc))
        return _EXIT.USAGE
    except (errors.exceptions.ArgRemaskError, OSError) as exc:
        logger.debug('Command failed', exc_info=True)
        errors.handlers.eprint(errors.handlers.format_diagnostic(exc))
        return _EXIT.RUNTIME
    return _EXIT.SUCCESS


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == '__main__':
    main()
