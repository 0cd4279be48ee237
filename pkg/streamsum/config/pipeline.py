"""Run-time configuration of one summarization pipeline."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from streamsum.config.settings import settings
from streamsum.core.detectors import DetectorConfig
from streamsum.core.models import EventSchedule, SelectorMethod
from streamsum.core.weighting import TermWeighting


class RunMode(str, Enum):
    """What a command-line invocation does."""

    SUMMARIZE = "summarize"
    EVALUATE = "evaluate"
    GENERATE = "generate"
    HISTOGRAM = "histogram"


class PipelineConfig(BaseModel):
    """Everything a summarization run needs.

    The defaults select the outliers detector with KLD selection for
    Spanish, English and Portuguese.
    """

    model_config = ConfigDict(frozen=True)

    schedule: EventSchedule
    detector: DetectorConfig = Field(default_factory=DetectorConfig)
    selector: TermWeighting = Field(default_factory=TermWeighting)
    compare_selectors: bool = False
    languages: tuple[str, ...] = Field(default_factory=lambda: tuple(settings.language_list))
    min_token_len: int = Field(default_factory=lambda: settings.min_token_len, ge=1)
    input_path: str | None = None
    output_path: str | None = None
    mode: RunMode = RunMode.SUMMARIZE

    @field_validator("languages")
    @classmethod
    def validate_languages(cls, v: tuple[str, ...]) -> tuple[str, ...]:
        """Lowercase and de-duplicate, keeping order."""
        seen: list[str] = []
        for code in v:
            code = code.strip().lower()
            if code and code not in seen:
                seen.append(code)
        if not seen:
            raise ValueError("at least one language is required")
        return tuple(seen)

    @model_validator(mode="after")
    def validate_warmup(self) -> "PipelineConfig":
        """Detector and schedule must agree on the warm-up."""
        if self.detector.warmup_seconds != self.schedule.warmup_seconds:
            raise ValueError(
                f"detector warm-up ({self.detector.warmup_seconds}s) differs from "
                f"schedule warm-up ({self.schedule.warmup_seconds}s)"
            )
        return self

    @property
    def weightings(self) -> list[TermWeighting]:
        """Weightings to run: the configured one, or TF and KLD side by side."""
        if not self.compare_selectors:
            return [self.selector]
        return [
            self.selector.model_copy(update={"method": method})
            for method in (SelectorMethod.TF, SelectorMethod.KLD)
        ]
