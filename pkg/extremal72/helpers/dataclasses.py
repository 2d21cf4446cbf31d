""" Module for storing shared dataclasses """

from dataclasses import dataclass
from pathlib import Path

PIPELINE_DIR = 'pipeline'


@dataclass(frozen=True)
class PipelinePaths:
    """ Where the stage artifacts of a run live: one code store and one witness sidecar per stage under
        `<data>/pipeline/`, plus the search report. """
    data_dir: Path

    @property
    def root(self) -> Path:
        return Path(self.data_dir) / PIPELINE_DIR

    def store(self, stage: str) -> Path:
        """ Code store of a stage, for instance `data/pipeline/AG.txt` """
        return self.root / f'{stage}.txt'

    def witnesses(self, stage: str) -> Path:
        """ Json lines sidecar holding the witnesses of a stage. """
        return self.root / f'{stage}.witness.jsonl'

    @property
    def report(self) -> Path:
        return self.root / 'report.txt'
