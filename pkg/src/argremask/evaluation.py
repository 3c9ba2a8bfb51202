# -*- coding: utf-8 -*-
"""
:Module:            argremask.evaluation
:Synopsis:          ROUGE, proxy scores for coverage, faithfulness and conciseness, and the refinement ablation harness
:Usage:             ``from argremask import evaluation``
:Example:           ``report = evaluation.evaluate([(instance, summary_text)])``
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026
"""

from __future__ import annotations

import csv
import io
import json
import math
import shlex
import subprocess  # nosec B404
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Optional, Sequence, Union

from . import api, corpus, engine, errors, sufficiency
from . import constants as const
from .corpus import ArgumentInstance, TokenSeq
from .denoiser import DenoiserModel, SummaryState, fit_to_canvas
from .utils import core_utils, log_utils

# Initialize logging
logger = log_utils.initialize_logging(__name__)

_DEFAULTS = const.EVAL_DEFAULTS
_CORE_METRICS = ('rouge_1', 'rouge_2', 'rouge_l', 'coverage', 'faithfulness', 'conciseness')

Tokens = Union[TokenSeq, Sequence[str], str]


def _surfaces(_value: Tokens) -> list[str]:
    if isinstance(_value, TokenSeq):
        return list(_value.surface)
    if isinstance(_value, str):
        return list(corpus.tokenize(_value).surface)
    return list(_value)


# -----------------------------
# ROUGE
# -----------------------------


def _f1(_overlap: int, _candidate_total: int, _reference_total: int) -> float:
    if not _overlap or not _candidate_total or not _reference_total:
        return 0.0
    precision, recall = _overlap / _candidate_total, _overlap / _reference_total
    return 2 * precision * recall / (precision + recall)


def _ngrams(_tokens: Sequence[str], _n: int) -> Counter:
    return Counter(tuple(_tokens[_idx:_idx + _n]) for _idx in range(len(_tokens) - _n + 1))


def rouge_n(candidate: Tokens, reference: Tokens, n: int = 1) -> float:
    """This function returns the ROUGE-N F1 score with clipped n-gram counts.

    :param candidate: The candidate tokens (a token sequence, surface list or raw text)
    :param reference: The reference tokens
    :param n: The n-gram order (``>= 1``)
    :type n: int
    :returns: The F1 score (0 when either side has no n-grams)
    :raises: :py:exc:`argremask.errors.exceptions.InvalidParameterError`
    """
    if n < 1:
        raise errors.exceptions.InvalidParameterError(param='n', value=n)
    candidate_grams, reference_grams = _ngrams(_surfaces(candidate), n), _ngrams(_surfaces(reference), n)
    overlap = sum((candidate_grams & reference_grams).values())
    return _f1(overlap, sum(candidate_grams.values()), sum(reference_grams.values()))


def lcs_length(left: Sequence[str], right: Sequence[str]) -> int:
    """Returns the length of the longest common subsequence of two token sequences."""
    previous = [0] * (len(right) + 1)
    for _left_token in left:
        current = [0]
        for _idx, _right_token in enumerate(right):
            current.append(previous[_idx] + 1 if _left_token == _right_token else max(previous[_idx + 1], current[_idx]))
        previous = current
    return previous[-1]


def rouge_l(candidate: Tokens, reference: Tokens) -> float:
    """This function returns the ROUGE-L F1 score (longest common subsequence)."""
    candidate, reference = _surfaces(candidate), _surfaces(reference)
    return _f1(lcs_length(candidate, reference), len(candidate), len(reference))


# -----------------------------
# Proxy Scores
# -----------------------------


def coverage_proxy(summary: str, input: ArgumentInstance, idf: Optional[sufficiency.IdfTable] = None,
                   threshold: float = _DEFAULTS.COVERAGE_THRESHOLD) -> float:
    """This function returns the fraction of claims the summary covers.

    A claim counts as covered when the IDF weight of the summary content shared with the claim and its evidence,
    relative to the weight of the claim's own content (capped at 1), exceeds ``threshold``.

    :param summary: The summary text
    :type summary: str
    :param input: The instance whose claims are checked
    :type input: class[argremask.corpus.ArgumentInstance]
    :param idf: The IDF table (computed from the instance when omitted)
    :type idf: class[argremask.sufficiency.IdfTable], None
    :param threshold: The coverage threshold (``0.3`` by default)
    :type threshold: float
    :returns: The covered fraction in ``[0, 1]``
    """
    content = set(corpus.content_tokens(corpus.tokenize(summary).surface))
    if not content:
        return 0.0
    idf = idf or sufficiency.IdfTable.from_instances([input])
    covered = 0
    for _claim in input.claims:
        claim_content = set(corpus.content_tokens(corpus.tokenize(_claim.claim_text).surface))
        unit_content = set(claim_content)
        for _text in _claim.evidence:
            unit_content.update(corpus.content_tokens(corpus.tokenize(_text).surface))
        shared = sum(idf.weight(_token) for _token in content & unit_content)
        claim_weight = sum(idf.weight(_token) for _token in claim_content)
        ratio = min(1.0, shared / claim_weight) if claim_weight else float(shared > 0)
        covered += ratio > threshold
    return covered / len(input.claims)


def faithfulness_proxy(summary: str, input: ArgumentInstance, idf: Optional[sufficiency.IdfTable] = None) -> float:
    """This function returns the mean heuristic sufficiency of the summary's sentences (0 for an empty summary)."""
    scored = sufficiency.sentence_sufficiency(corpus.tokenize(summary).surface, input, idf)
    return math.fsum(_score for _, _score in scored) / len(scored) if scored else 0.0


def conciseness_proxy(summary: str, input: Optional[ArgumentInstance] = None) -> float:
    """This function returns one minus the share of duplicated content tokens (1 for a summary without content)."""
    content = corpus.content_tokens(corpus.tokenize(summary).surface)
    if not content:
        return 1.0
    return max(0.0, 1.0 - (len(content) - len(set(content))) / len(content))


def metrics_snapshot(state: SummaryState, instance: ArgumentInstance, idf: Optional[sufficiency.IdfTable] = None) -> dict:
    """Returns the proxy scores of a state, plus ROUGE-L against the reference when the instance has one."""
    text = state.text()
    snapshot = {
        'coverage': coverage_proxy(text, instance, idf),
        'faithfulness': faithfulness_proxy(text, instance, idf),
        'conciseness': conciseness_proxy(text, instance),
    }
    if instance.reference_summary is not None:
        snapshot['rouge_l'] = rouge_l(text, instance.reference_summary)
    return snapshot


# -----------------------------
# External Scorers
# -----------------------------


@dataclass(frozen=True)
class ExternalScorer:
    """A metric computed outside the package (such as BLEURT or BERTScore) by a command or an endpoint.

    A command receives ``{"candidate": ..., "reference": ...}`` as JSON on standard input and prints a number;
    an endpoint receives the same JSON and answers ``{"score": <number>}``.
    """

    name: str
    command: Optional[Union[str, Sequence[str]]] = None
    endpoint: Optional[str] = None
    token: Optional[str] = None
    timeout: Optional[int] = None

    def __post_init__(self):
        if bool(self.command) == bool(self.endpoint):
            raise errors.exceptions.InvalidParameterError(param='external scorer',
                                                          message='exactly one of command or endpoint is required')

    def __call__(self, candidate: str, reference: str) -> float:
        payload = {'candidate': candidate, 'reference': reference}
        if self.endpoint:
            response = api.post_json(self.endpoint, payload, token=self.token, timeout=self.timeout)
            raw = response.get('score') if isinstance(response, dict) else None
        else:
            args = shlex.split(self.command) if isinstance(self.command, str) else list(self.command)
            try:
                completed = subprocess.run(args, input=json.dumps(payload), capture_output=True, text=True,  # nosec B603
                                           timeout=self.timeout or const.DEFAULT_API_TIMEOUT_SECONDS, check=False)
            except (OSError, subprocess.TimeoutExpired) as exc:
                raise errors.exceptions.ExternalScorerError(identifier=self.name, message=str(exc)) from exc
            if completed.returncode != 0:
                raise errors.exceptions.ExternalScorerError(identifier=self.name,
                                                            message=f'It exited with status {completed.returncode}.')
            raw = completed.stdout.strip()
        try:
            return float(raw)
        except (TypeError, ValueError) as exc:
            raise errors.exceptions.ExternalScorerError(identifier=self.name, message=f'It returned {raw!r}.') from exc


# -----------------------------
# Reports
# -----------------------------


@dataclass
class EvalReport:
    """Per-instance and corpus-mean scores of a set of candidate summaries."""

    per_instance: list[dict] = field(default_factory=list)
    means: dict = field(default_factory=dict)
    config_echo: dict = field(default_factory=dict)
    external_scores: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.per_instance)

    def to_dict(self) -> dict:
        return {
            'per_instance': self.per_instance,
            'means': self.means,
            'external_scores': self.external_scores,
            'config': self.config_echo,
        }

    def to_json(self) -> str:
        return core_utils.dump_json(self.to_dict(), indent=2)

    def render(self, as_csv: bool = False) -> str:
        """Returns the per-instance scores followed by the corpus means as an aligned table or CSV."""
        columns = list(_CORE_METRICS) + sorted(self.external_scores)
        header = ['id'] + [_DEFAULTS.METRIC_LABELS.get(_metric, _metric) for _metric in columns]
        rows = [[_row['id']] + [_format(_row.get(_metric)) for _metric in columns] for _row in self.per_instance]
        rows.append(['mean'] + [_format(self.means.get(_metric)) for _metric in columns])
        return _render_rows(header, rows, as_csv)


def _format(_value) -> str:
    if _value is None:
        return '-'
    if isinstance(_value, str):
        return _value
    return f'{_value:.3f}'


def _render_rows(_header: list[str], _rows: list[list[str]], _as_csv: bool) -> str:
    if _as_csv:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(_header)
        writer.writerows(_rows)
        return buffer.getvalue()
    widths = [max(len(str(_row[_col])) for _row in [_header] + _rows) for _col in range(len(_header))]
    lines = ['  '.join(str(_cell).ljust(_width) for _cell, _width in zip(_row, widths)).rstrip()
             for _row in [_header] + _rows]
    lines.insert(1, '  '.join('-' * _width for _width in widths))
    return '\n'.join(lines) + '\n'


def _score_instance(_instance: ArgumentInstance, _candidate: str, _idf, _threshold: float,
                    _external: Sequence[ExternalScorer]) -> dict:
    if _instance.reference_summary is None:
        raise errors.exceptions.MissingReferenceError(identifier=_instance.id)
    reference = _instance.reference_summary
    row = {
        'id': _instance.id,
        'rouge_1': rouge_n(_candidate, reference, 1),
        'rouge_2': rouge_n(_candidate, reference, 2),
        'rouge_l': rouge_l(_candidate, reference),
        'coverage': coverage_proxy(_candidate, _instance, _idf, _threshold),
        'faithfulness': faithfulness_proxy(_candidate, _instance, _idf),
        'conciseness': conciseness_proxy(_candidate, _instance),
    }
    for _scorer in _external:
        row[_scorer.name] = _scorer(_candidate, reference)
    return row


def evaluate(
    pairs: Iterable[tuple[ArgumentInstance, str]],
    idf: Optional[sufficiency.IdfTable] = None,
    external: Sequence[ExternalScorer] = (),
    workers: int = _DEFAULTS.WORKERS,
    coverage_threshold: float = _DEFAULTS.COVERAGE_THRESHOLD,
    config_echo: Optional[dict] = None,
) -> EvalReport:
    """This function scores candidate summaries against their instances' references.

    Instances are scored in parallel when ``workers > 1``; the report keeps the input order.

    :param pairs: ``(instance, candidate text)`` pairs; every instance needs a reference summary
    :type pairs: list
    :param idf: The IDF table for the proxies (computed from the instances when omitted)
    :type idf: class[argremask.sufficiency.IdfTable], None
    :param external: External scorers whose results fill ``external_scores``
    :type external: list
    :param workers: Parallel workers (``1`` by default)
    :type workers: int
    :param coverage_threshold: The coverage threshold (``0.3`` by default)
    :type coverage_threshold: float
    :param config_echo: The configuration snapshot embedded in the report
    :type config_echo: dict, None
    :returns: The evaluation report
    :raises: :py:exc:`argremask.errors.exceptions.MissingReferenceError`,
             :py:exc:`argremask.errors.exceptions.ExternalScorerError`
    """
    pairs = list(pairs)
    idf = idf or sufficiency.IdfTable.from_instances(_instance for _instance, _ in pairs)

    def _score(_pair):
        return _score_instance(_pair[0], _pair[1], idf, coverage_threshold, external)

    if workers > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_score, pairs))
    else:
        rows = [_score(_pair) for _pair in pairs]
    metrics = list(_CORE_METRICS) + [_scorer.name for _scorer in external]
    means = {_metric: (math.fsum(_row[_metric] for _row in rows) / len(rows) if rows else 0.0) for _metric in metrics}
    echo = dict(config_echo or {})
    echo.setdefault('coverage_threshold', coverage_threshold)
    return EvalReport(
        per_instance=rows,
        means={_metric: means[_metric] for _metric in _CORE_METRICS},
        config_echo=echo,
        external_scores={_scorer.name: means[_scorer.name] for _scorer in external},
    )


# -----------------------------
# Ablation
# -----------------------------


@dataclass(frozen=True)
class AblationCell:
    """One (scorer variant, iteration count) cell; ``error`` holds the failure message of a failed cell.

    ``failures`` maps the identifiers of instances whose initial summary could not be produced to their failure
    messages; the report covers the remaining instances.
    """

    variant: str
    iterations: int
    report: Optional[EvalReport] = None
    error: Optional[str] = None
    failures: dict[str, str] = field(default_factory=dict)

    def value(self, metric: str) -> Optional[float]:
        if self.report is None:
            return None
        return self.report.means.get(metric, self.report.external_scores.get(metric))


@dataclass
class AblationTable:
    """The grid of ablation cells with the metric columns to show."""

    cells: list[AblationCell] = field(default_factory=list)
    metrics: tuple[str, ...] = _DEFAULTS.GRID_METRICS

    def __len__(self) -> int:
        return len(self.cells)

    @property
    def variants(self) -> list[str]:
        return list(dict.fromkeys(_cell.variant for _cell in self.cells))

    @property
    def iteration_counts(self) -> list[int]:
        return list(dict.fromkeys(_cell.iterations for _cell in self.cells))

    def cell(self, variant: str, iterations: int) -> Optional[AblationCell]:
        for _cell in self.cells:
            if _cell.variant == variant and _cell.iterations == iterations:
                return _cell
        return None

    def _values(self, _cell: Optional[AblationCell]) -> list[str]:
        if _cell is None or _cell.error is not None:
            return ['error'] * len(self.metrics)
        return [_format(_cell.value(_metric)) for _metric in self.metrics]

    def rows(self, layout: str = _DEFAULTS.LAYOUT_CELLS, variant: Optional[str] = None,
             iterations: Optional[int] = None) -> tuple[list[str], list[list[str]]]:
        """Returns the header and rows of a layout.

        ``cells`` lists every cell; ``iterations`` has one row per iteration count for one variant (the first by
        default); ``variants`` has one row per variant at one iteration count (the largest by default).

        :raises: :py:exc:`argremask.errors.exceptions.InvalidParameterError`
        """
        labels = [_DEFAULTS.METRIC_LABELS.get(_metric, _metric) for _metric in self.metrics]
        if layout == _DEFAULTS.LAYOUT_CELLS:
            rows = [[_DEFAULTS.VARIANT_LABELS.get(_cell.variant, _cell.variant), str(_cell.iterations)]
                    + self._values(_cell) for _cell in self.cells]
            return ['Variant', 'Iterations'] + labels, rows
        if layout == _DEFAULTS.LAYOUT_ITERATIONS:
            if not self.cells:
                return ['Iterations'] + labels, []
            variant = variant or self.variants[0]
            rows = [[str(_count)] + self._values(self.cell(variant, _count)) for _count in self.iteration_counts]
            return ['Iterations'] + labels, rows
        if layout == _DEFAULTS.LAYOUT_VARIANTS:
            if not self.cells:
                return ['Variant'] + labels, []
            iterations = max(self.iteration_counts) if iterations is None else iterations
            rows = [[_DEFAULTS.VARIANT_LABELS.get(_variant, _variant)] + self._values(self.cell(_variant, iterations))
                    for _variant in self.variants]
            return ['Variant'] + labels, rows
        raise errors.exceptions.InvalidParameterError(param='layout', value=layout)

    def render(self, layout: str = _DEFAULTS.LAYOUT_CELLS, as_csv: bool = False, variant: Optional[str] = None,
               iterations: Optional[int] = None) -> str:
        header, rows = self.rows(layout, variant, iterations)
        return _render_rows(header, rows, as_csv)

    def to_dict(self) -> dict:
        return {
            'metrics': list(self.metrics),
            'cells': [
                {'variant': _cell.variant, 'iterations': _cell.iterations, 'error': _cell.error,
                 'failures': dict(_cell.failures),
                 'means': ({**_cell.report.means, **_cell.report.external_scores} if _cell.report else None)}
                for _cell in self.cells
            ],
        }


def ablation(
    dataset: Sequence[ArgumentInstance],
    model: DenoiserModel,
    scorer_variants: Sequence[str],
    iteration_counts: Sequence[int],
    refine_config: Optional[engine.RefineConfig] = None,
    schedule: Optional[engine.DiffusionSchedule] = None,
    seed: int = const.DEFAULT_SEED,
    scorer_factory: Optional[Callable[[str], sufficiency.Scorer]] = None,
    initial_fn: Optional[Callable[[ArgumentInstance], SummaryState]] = None,
    idf: Optional[sufficiency.IdfTable] = None,
    external: Sequence[ExternalScorer] = (),
    metrics: Sequence[str] = _DEFAULTS.GRID_METRICS,
    workers: int = _DEFAULTS.WORKERS,
) -> AblationTable:
    """This function evaluates refinement for every (scorer variant, iteration count) cell.

    Each instance is generated once; each variant then refines it once with the largest iteration count and
    the smaller counts are read from the same trace. A failure in one variant or cell is recorded in that
    cell and the others still run.

    :param dataset: Instances with reference summaries
    :type dataset: list
    :param model: The denoiser used for generation and refinement
    :type model: class[argremask.denoiser.DenoiserModel]
    :param scorer_variants: Scorer kinds (``none``, ``heuristic``, ``classifier``, ``cot``, ``combined``)
    :type scorer_variants: list
    :param iteration_counts: Refinement iteration counts
    :type iteration_counts: list
    :param refine_config: Refinement settings (its ``iterations`` and ``scorer`` are set per cell)
    :type refine_config: class[argremask.engine.RefineConfig], None
    :param schedule: The generation schedule
    :type schedule: class[argremask.engine.DiffusionSchedule], None
    :param seed: The run seed
    :type seed: int
    :param scorer_factory: Builds the scorer of a variant (heuristic IDF over the dataset by default)
    :type scorer_factory: Callable, None
    :param initial_fn: Supplies the unrefined state of an instance instead of generating it
    :type initial_fn: Callable, None
    :param idf: The IDF table
    :type idf: class[argremask.sufficiency.IdfTable], None
    :param external: External scorers
    :type external: list
    :param metrics: The metric columns of the rendered grids
    :type metrics: list, tuple
    :param workers: Variants refined in parallel
    :type workers: int
    :returns: The ablation table
    :raises: :py:exc:`argremask.errors.exceptions.MissingReferenceError`
    """
    for _instance in dataset:
        if _instance.reference_summary is None:
            raise errors.exceptions.MissingReferenceError(identifier=_instance.id)
    if any(_count < 0 for _count in iteration_counts):
        raise errors.exceptions.InvalidParameterError(param='iteration_counts', value=list(iteration_counts))
    table = AblationTable(metrics=tuple(metrics))
    if not scorer_variants or not iteration_counts:
        return table
    idf = idf or sufficiency.IdfTable.from_instances(dataset)
    scorer_factory = scorer_factory or (lambda _kind: sufficiency.build_scorer(_kind, idf=idf))
    refine_config = refine_config or engine.RefineConfig()
    deepest = max(iteration_counts)

    initial, failures = {}, {}
    for _instance in dataset:
        try:
            if initial_fn is not None:
                initial[_instance.id] = initial_fn(_instance)
            else:
                rng = core_utils.get_rng(seed, const.RNG_STREAMS.FILL, _instance.id)
                initial[_instance.id] = engine.generate(_instance, model, schedule, rng=rng)
        except errors.exceptions.ArgRemaskError as exc:
            logger.error(f"The initial summary of '{_instance.id}' could not be generated: {exc}")
            failures[_instance.id] = str(exc)
    generated = [_instance for _instance in dataset if _instance.id in initial]

    def _run_variant(_variant: str) -> list[AblationCell]:
        if not generated:
            message = 'no initial summary could be generated'
            return [AblationCell(_variant, _count, error=message, failures=dict(failures)) for _count in iteration_counts]
        try:
            scorer = scorer_factory(_variant)
            config = replace(refine_config, iterations=deepest, scorer=_variant)
            traces = [
                engine.refine(initial[_instance.id], _instance, model, scorer, config,
                              core_utils.get_rng(seed, const.RNG_STREAMS.PLAN, _instance.id, _variant))
                for _instance in generated
            ]
        except errors.exceptions.ArgRemaskError as exc:
            logger.error(f"The '{_variant}' ablation variant failed: {exc}")
            return [AblationCell(_variant, _count, error=str(exc), failures=dict(failures)) for _count in iteration_counts]
        cells = []
        for _count in iteration_counts:
            try:
                pairs = [(_instance, _trace.state_at(_count).text()) for _instance, _trace in zip(generated, traces)]
                echo = {'variant': _variant, 'iterations': _count, 'seed': seed, 'refine': config.echo()}
                report = evaluate(pairs, idf, external, config_echo=echo)
                cells.append(AblationCell(_variant, _count, report, failures=dict(failures)))
            except errors.exceptions.ArgRemaskError as exc:
                logger.error(f"The ablation cell '{_variant}' x {_count} failed: {exc}")
                cells.append(AblationCell(_variant, _count, error=str(exc), failures=dict(failures)))
        return cells

    if workers > 1 and len(scorer_variants) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_variant, scorer_variants))
    else:
        results = [_run_variant(_variant) for _variant in scorer_variants]
    table.cells = [_cell for _cells in results for _cell in _cells]
    logger.info(f'Completed an ablation of {len(scorer_variants)} variants x {len(iteration_counts)} iteration counts')
    return table


def off_topic_initial_fn(model: DenoiserModel, seed: int = const.DEFAULT_SEED) -> Callable[[ArgumentInstance], SummaryState]:
    """Returns an ``initial_fn`` that starts refinement from each reference with one off-topic sentence appended."""

    def _initial(_instance: ArgumentInstance) -> SummaryState:
        rng = core_utils.get_rng(seed, const.RNG_STREAMS.SYNTHETIC, _instance.id, 'off-topic')
        noisy = corpus.tokenize(corpus.inject_off_topic(_instance, rng), model.vocab)
        return SummaryState.from_tokens(fit_to_canvas(noisy, model.canvas_length))

    return _initial
