""" Module to provide messaging functionality, mainly for reporting what a stage or check found, and the json
    encoding used for checkpoints and celery payloads. """

import json
from enum import Enum
from typing import Optional

from ..codes import LinearCode
from ..gf2linalg import BitVector
from ..perms import Permutation


class CustomDataEncoder(json.JSONEncoder):
    """ Class to enable json serialisation for vectors, permutations, codes and `StageMessage`. """

    def default(self, o):
        if isinstance(o, StageMessage):
            return o.to_dict()
        if isinstance(o, BitVector):
            return {'bitvector': str(o)}
        if isinstance(o, Permutation):
            return {'permutation': list(o.images)}
        if isinstance(o, LinearCode):
            return {'code_name': o.name, 'code_n': o.n, 'code_rows': o.to_strings()}
        return super().default(o)


class CustomDataDecoder(json.JSONDecoder):
    """Class to decode JSON strings into custom objects."""

    def __init__(self, *args, **kwargs):
        super().__init__(object_hook=self.object_hook, *args, **kwargs)

    def object_hook(self, obj):  # type: ignore
        # pylint: disable-msg=method-hidden
        """ Decodes JSON strings into custom objects. """
        if 'severity' in obj and 'message' in obj:
            return StageMessage.from_dict(obj)

        if 'bitvector' in obj:
            return BitVector.from_string(obj['bitvector'])

        if 'permutation' in obj:
            return Permutation(tuple(obj['permutation']))

        if 'code_rows' in obj and 'code_n' in obj:
            rows = [BitVector.from_string(row).bits for row in obj['code_rows']]
            return LinearCode.from_rows(obj['code_n'], rows, name=obj.get('code_name', ''))

        return obj


def dumps(obj, **kwargs) -> str:
    """ `json.dumps` with the custom encoder and sorted keys, so equal data gives equal text. """
    return json.dumps(obj, cls=CustomDataEncoder, sort_keys=True, **kwargs)


def loads(text: str):
    return json.loads(text, cls=CustomDataDecoder)


class Severity(Enum):
    """ Simple enum representing the severity of a message. """
    INFO = "info"
    WARNING = "warning"
    ERROR = "error"

    @classmethod
    def from_string(cls, value: str):
        """ Get Severity object from lower case severity `str`. """
        try:
            return cls(value)
        except ValueError as e:
            raise ValueError(f"Invalid severity: {value}") from e


class StageMessage:
    """ A single finding of a pipeline stage or oracle check: severity, text and the stage that produced it.
        Carries no timestamp so that reports built from messages are reproducible. """

    def __init__(self, severity: Severity, message: str, stage: Optional[str] = None):
        if not isinstance(severity, Severity):
            raise ValueError("severity must be an instance of the Severity enum")

        self.severity = severity
        self.message = message
        self.stage = stage or ''

    def __repr__(self):
        return f'<StageMessage {self.severity}: "{self.message}" in {self.stage or "-"}>'

    def __eq__(self, other):
        return (isinstance(other, StageMessage) and self.severity is other.severity
                and self.message == other.message and self.stage == other.stage)

    def __hash__(self):
        return hash((self.severity, self.message, self.stage))

    def to_dict(self):
        """ Enables JSON serialisation, encodes severity as lowercase string. """
        return {
            'severity': self.severity.value,
            'message': self.message,
            'stage': self.stage,
        }

    @classmethod
    def from_dict(cls, data: dict):
        """ Enables JSON deserialisation, assumes data has severity and message fields. """
        return cls(
            severity=Severity.from_string(data['severity']),
            message=data['message'],
            stage=data.get('stage'),
        )

    def __str__(self):
        prefix = f"[{self.severity.value.upper()}]"
        if self.stage:
            prefix += f" {self.stage}:"
        return f"{prefix} {self.message}"

    @classmethod
    def info(cls, message: str, stage: Optional[str] = None):
        """ Initialises and returns an info `StageMessage` """
        return StageMessage(Severity.INFO, message, stage)

    @classmethod
    def warning(cls, message: str, stage: Optional[str] = None):
        """ Initialises and returns a warning `StageMessage` """
        return StageMessage(Severity.WARNING, message, stage)

    @classmethod
    def error(cls, message: str, stage: Optional[str] = None):
        """ Initialises and returns an error `StageMessage` """
        return StageMessage(Severity.ERROR, message, stage)


def report_error_free(messages: list[StageMessage]):
    """ Determines if a stage or check was successful by checking for any error messages, returns `bool`. """
    for message in messages:
        if message.severity is Severity.ERROR:
            return False

    return True
