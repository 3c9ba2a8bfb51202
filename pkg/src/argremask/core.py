# -*- coding: utf-8 -*-
"""
:Module:            argremask.core
:Synopsis:          This module ties configuration, data, models and scorers together for summarization runs
:Usage:             ``from argremask import Summarizer``
:Example:           ``summarizer = Summarizer(helper='run.cfg', seed=7)``
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026
"""

from __future__ import annotations

from typing import Any, Callable, Optional, Sequence

from . import constants as const
from . import corpus, denoiser, engine, errors, evaluation, sufficiency
from .config import RunConfig
from .corpus import ArgumentInstance
from .denoiser import DenoiserModel, SummaryState, TrainingReport
from .utils import core_utils, log_utils

# Initialize logging
logger = log_utils.initialize_logging(__name__)


class Summarizer:
    """This is the client object for the library that generates, refines, scores and evaluates summaries.

    Settings resolve from the defaults, the ``helper`` configuration file, the ``REMASK_*`` environment variables
    and finally the keyword overrides, then are validated before anything else happens.

    :param config: A fully resolved configuration (the other sources are ignored when supplied)
    :type config: class[argremask.config.RunConfig], None
    :param helper: The file path of a configuration file (YAML, JSON or flat ``key = value`` text)
    :type helper: str, None
    :param model: A denoiser to use instead of loading ``model_path``
    :type model: class[argremask.denoiser.DenoiserModel], None
    :param classifier: A sufficiency classifier to use instead of loading ``classifier_path``
    :type classifier: class[argremask.sufficiency.ClassifierModel], None
    :param idf: The IDF table used by the heuristic scorer and the proxies (built from the data when omitted)
    :type idf: class[argremask.sufficiency.IdfTable], None
    :param overrides: Configuration keys that take precedence over every other source
    :returns: The instantiated object
    :raises: :py:exc:`argremask.errors.exceptions.InvalidParameterError`
    """

    def __init__(
        self,
        config: Optional[RunConfig] = None,
        helper: Optional[str] = None,
        model: Optional[DenoiserModel] = None,
        classifier: Optional[sufficiency.ClassifierModel] = None,
        idf: Optional[sufficiency.IdfTable] = None,
        **overrides: Any,
    ):
        self.config = config if config is not None else RunConfig.from_sources(helper, overrides)
        self.config.validate()
        self.model = model
        if self.model is None and self.config.model_path:
            self.model = denoiser.load_model(self.config.model_path, token=self.config.llm_token)
        self.classifier = classifier
        if self.classifier is None and self.config.classifier_path:
            self.classifier = sufficiency.load_classifier(self.config.classifier_path)
        self.idf = idf

    def __repr__(self) -> str:
        model_kind = self.model.kind if self.model else None
        return f'Summarizer(model={model_kind!r}, scorer={self.config.scorer!r}, seed={self.config.seed})'

    # -----------------------------
    # Data and Models
    # -----------------------------

    def load_dataset(self, path: str, format: Optional[str] = None) -> list[ArgumentInstance]:
        """This method loads a dataset in the configured (or given) format."""
        return corpus.load_dataset(path, format or self.config.data_format)

    def use_idf(self, instances: Sequence[ArgumentInstance]) -> sufficiency.IdfTable:
        """This method returns the configured IDF table, or one built from the given instances when none is set."""
        return self.idf if self.idf is not None else sufficiency.IdfTable.from_instances(instances)

    def train_denoiser(self, instances: Sequence[ArgumentInstance]) -> TrainingReport:
        """This method trains the denoiser on the instances' reference summaries and keeps it on the object.

        :param instances: Instances that all carry a reference summary
        :type instances: list
        :returns: The training report
        :raises: :py:exc:`argremask.errors.exceptions.EmptyDatasetError`,
                 :py:exc:`argremask.errors.exceptions.MissingReferenceError`
        """
        if not instances:
            raise errors.exceptions.EmptyDatasetError()
        vocab = corpus.build_vocabulary(corpus.corpus_texts(instances), self.config.min_count)
        pairs = denoiser.build_training_pairs(instances, vocab)
        self.model, report = denoiser.train_denoiser(pairs, self.config.training_config(), vocab)
        return report

    def save_model(self, path: str) -> None:
        denoiser.save_model(self._require_model(), path, self.config.training_config().echo())

    def train_classifier(self, instances: Sequence[ArgumentInstance]) -> tuple[sufficiency.ClassifierModel, sufficiency.PerturbationSet]:
        """This method generates perturbation spans from the instances and fits the sufficiency classifier on them.

        :param instances: The instances to perturb
        :type instances: list
        :returns: The trained classifier and the labelled spans it was fitted on
        :raises: :py:exc:`argremask.errors.exceptions.SingleClassDataError`
        """
        data = sufficiency.perturbation_dataset(instances, self.config.seed, self.config.k_per_type)
        if data.unavailable:
            logger.warning(f"Perturbation types unavailable for some instances: {', '.join(data.unavailable)}")
        self.classifier = sufficiency.train_classifier(
            data.spans,
            epochs=self.config.classifier_epochs,
            lr=self.config.classifier_lr,
            seed=self.config.feature_hash_seed,
            dim=self.config.classifier_dim,
        )
        return self.classifier, data

    def scorer(self, kind: Optional[str] = None) -> sufficiency.Scorer:
        """This method builds the sufficiency scorer of a kind (the configured scorer by default)."""
        return sufficiency.build_scorer(
            kind or self.config.scorer,
            idf=self.idf,
            classifier=self.classifier,
            cot_client=self.config.cot_client(),
            alpha=self.config.combine_alpha,
            max_in_flight=self.config.max_in_flight,
        )

    def debate_prompt(self, instance: ArgumentInstance) -> str:
        """This method returns the debate-speech instruction for an instance, ready to send to a remote model."""
        return sufficiency.instance_prompt(instance)

    def _require_model(self) -> DenoiserModel:
        if self.model is None:
            logger.error('No denoiser model has been trained or loaded')
            raise errors.exceptions.FeatureNotConfiguredError(feature='denoiser model')
        return self.model

    # -----------------------------
    # Generation and Refinement
    # -----------------------------

    def generate(self, instance: ArgumentInstance) -> SummaryState:
        """This method generates the unrefined summary state of an instance."""
        rng = core_utils.get_rng(self.config.seed, const.RNG_STREAMS.FILL, instance.id)
        return engine.generate(instance, self._require_model(), self.config.schedule(), None, rng,
                               self.config.fill_policy)

    def refine(self, state: SummaryState, instance: ArgumentInstance, iterations: Optional[int] = None,
               scorer: Optional[str] = None) -> engine.RefinementTrace:
        """This method refines a summary state and returns the trace, with the metrics snapshot at every iteration.

        :param state: A fully unmasked state
        :type state: class[argremask.denoiser.SummaryState]
        :param instance: The conditioning instance
        :type instance: class[argremask.corpus.ArgumentInstance]
        :param iterations: The refinement budget (the configured budget by default)
        :type iterations: int, None
        :param scorer: The scorer kind (the configured scorer by default)
        :type scorer: str, None
        :returns: The refinement trace
        """
        config = self.config.refine_config(iterations, scorer)
        idf = self.use_idf([instance])
        rng = core_utils.get_rng(self.config.seed, const.RNG_STREAMS.PLAN, instance.id, config.scorer)
        return engine.refine(state, instance, self._require_model(), self.scorer(config.scorer), config, rng,
                             metrics_fn=lambda _state, _instance: evaluation.metrics_snapshot(_state, _instance, idf))

    def summarize(self, instance: ArgumentInstance, iterations: Optional[int] = None,
                  scorer: Optional[str] = None) -> tuple[dict, Optional[engine.RefinementTrace]]:
        """This method generates and (with a positive budget) refines a summary, returning its output record.

        The record holds ``id``, ``summary``, ``terminated_by``, ``metrics`` and the configuration echo.

        :returns: The output record and the refinement trace (``None`` without refinement)
        """
        iterations = self.config.refine_iterations if iterations is None else iterations
        state = self.generate(instance)
        trace = None
        terminated_by = None
        if iterations > 0:
            trace = self.refine(state, instance, iterations, scorer)
            state = trace.final_state
            terminated_by = trace.terminated_by
        idf = self.use_idf([instance])
        record = {
            'id': instance.id,
            'summary': state.text(),
            'terminated_by': terminated_by,
            'metrics': evaluation.metrics_snapshot(state, instance, idf),
            'config': self.config.echo(),
        }
        return record, trace

    # -----------------------------
    # Scoring and Evaluation
    # -----------------------------

    def summary_state(self, instance: ArgumentInstance, summary: str) -> SummaryState:
        """This method places an existing summary text on a canvas long enough to hold all of it."""
        if self.model is not None:
            vocab = self.model.vocab
        else:
            vocab = corpus.build_vocabulary(corpus.corpus_texts([instance]) + [summary])
        tokens = corpus.tokenize(summary, vocab)
        length = max(self.config.canvas_length, len(tokens) + 1)
        return SummaryState.from_tokens(denoiser.fit_to_canvas(tokens, length))

    def score(self, instance: ArgumentInstance, summary: str, scorer: Optional[str] = None) -> dict:
        """This method returns the sufficiency report of an existing summary.

        :param instance: The instance the summary was written for
        :type instance: class[argremask.corpus.ArgumentInstance]
        :param summary: The summary text
        :type summary: str
        :param scorer: The scorer kind (the configured scorer by default)
        :type scorer: str, None
        :returns: The per-sentence scores, the profile summary statistics and the proxy metrics
        :raises: :py:exc:`argremask.errors.exceptions.FeatureNotConfiguredError`
        """
        state = self.summary_state(instance, summary)
        active = self.scorer(scorer)
        active.ensure_configured()
        profile = active(state, instance)
        surfaces = state.surface
        sentences = [
            {
                'start': _span.start,
                'end': _span.end,
                'text': corpus.detokenize(surfaces[_span.start:_span.end]),
                'score': _span.score,
                'source': _span.source,
            }
            for _span in profile.spans
            if _span.start < state.body_length()
        ]
        return {
            'id': instance.id,
            'summary': state.text(),
            'scorer': scorer or self.config.scorer,
            'min_score': min((_sentence['score'] for _sentence in sentences), default=profile.min_score()),
            'mean_score': profile.mean_score(),
            'sentences': sentences,
            'metrics': evaluation.metrics_snapshot(state, instance, self.use_idf([instance])),
            'config': self.config.echo(),
        }

    def evaluate(self, pairs: Sequence[tuple[ArgumentInstance, str]]) -> evaluation.EvalReport:
        """This method scores candidate summaries against their references with the configured metrics."""
        idf = self.idf or sufficiency.IdfTable.from_instances(_instance for _instance, _ in pairs)
        return evaluation.evaluate(
            pairs,
            idf,
            external=self.config.external_scorers(),
            workers=self.config.workers,
            coverage_threshold=self.config.coverage_threshold,
            config_echo=self.config.echo(),
        )

    def ablate(
        self,
        instances: Sequence[ArgumentInstance],
        variants: Sequence[str],
        iteration_counts: Sequence[int],
        initial_fn: Optional[Callable[[ArgumentInstance], SummaryState]] = None,
        metrics: Optional[Sequence[str]] = None,
    ) -> evaluation.AblationTable:
        """This method runs the scorer-variant by iteration-count ablation over the instances.

        :param instances: Instances with reference summaries
        :type instances: list
        :param variants: Scorer kinds, one per table row
        :type variants: list
        :param iteration_counts: Refinement budgets, one per table column group
        :type iteration_counts: list
        :param initial_fn: Supplies the unrefined state of an instance instead of generating it
        :type initial_fn: Callable, None
        :param metrics: The metric columns (R-L plus the proxies, or the external scorer when configured)
        :type metrics: list, None
        :returns: The ablation table
        """
        external = self.config.external_scorers()
        if metrics is None:
            metrics = const.EVAL_DEFAULTS.GRID_METRICS
            if external:
                metrics = ('rouge_l', external[0].name, 'faithfulness')
        idf = self.idf or sufficiency.IdfTable.from_instances(instances)
        return evaluation.ablation(
            instances,
            self._require_model(),
            variants,
            iteration_counts,
            refine_config=self.config.refine_config(),
            schedule=self.config.schedule(),
            seed=self.config.seed,
            scorer_factory=lambda _kind: sufficiency.build_scorer(
                _kind, idf=idf, classifier=self.classifier, cot_client=self.config.cot_client(),
                alpha=self.config.combine_alpha, max_in_flight=self.config.max_in_flight),
            initial_fn=initial_fn,
            idf=idf,
            external=external,
            metrics=metrics,
            workers=self.config.workers,
        )
