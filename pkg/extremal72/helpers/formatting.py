""" Module for providing string formatting helper functions. """

from typing import Iterable, Optional

from ..codes import LinearCode
from .messaging import StageMessage


def messages_str(messages: Iterable[StageMessage]) -> str:
    """ One line per message, `[SEVERITY] stage: message`, primarily for printing stage results. """
    return '\n'.join(str(message) for message in messages)


def code_summary(code: LinearCode, name: Optional[str] = None) -> str:
    """ `name [n,k]` for a code, for instance `"F [12,6]"` """
    return f'{name or code.name or "code"} [{code.n},{code.k}]'


def counts_str(counts: dict[str, int]) -> str:
    """ Takes a mapping of names to counts and returns `name=count` pairs in insertion order. """
    return ' '.join(f'{name}={count}' for name, count in counts.items())


def word_str(bits: Optional[int], n: int) -> str:
    """ A word as a 0/1 string with coordinate 1 first, or `"none"`. """
    if bits is None:
        return 'none'
    return ''.join('1' if (bits >> i) & 1 else '0' for i in range(n))
