""" File related helper functions. """

import logging
import os
from pathlib import Path
import tempfile
from typing import Iterable, Union

from .messaging import dumps, loads

logger = logging.getLogger(__name__)

PathLike = Union[str, os.PathLike]


def atomic_write_text(path: PathLike, text: str):
    """ Writes `text` to `path` through a temporary file in the same directory and `os.replace`, so readers
        only ever see the old or the new content. """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    handle, temp_name = tempfile.mkstemp(prefix=f'.{path.name}.', suffix='.tmp', dir=path.parent)
    try:
        with os.fdopen(handle, 'w', encoding='utf-8', newline='\n') as file:
            file.write(text)
            file.flush()
            os.fsync(file.fileno())
        os.replace(temp_name, path)
    except BaseException:
        if os.path.exists(temp_name):
            os.unlink(temp_name)
        raise
    logger.debug('wrote %s', path)


def read_text(path: PathLike) -> str:
    with open(path, 'r', encoding='utf-8') as file:
        return file.read()


def json_lines(objects: Iterable) -> str:
    """ One sorted-key json object per line with the custom encoder. """
    return ''.join(dumps(obj) + '\n' for obj in objects)


def write_json_lines(path: PathLike, objects: Iterable, header: str = ''):
    """ Atomically writes an optional header line followed by json lines. """
    text = (header + '\n' if header else '') + json_lines(objects)
    atomic_write_text(path, text)


def read_json_lines(path: PathLike, skip_header: bool = False) -> list:
    """ Decodes every non-blank line of a json lines file, optionally skipping the first line. """
    lines = read_text(path).splitlines()
    if skip_header:
        lines = lines[1:]
    return [loads(line) for line in lines if line.strip()]
