from dataclasses import dataclass, field

import logbook

CHANNEL_PREFIX = "sqfree"
STDERR_FORMAT = (
    "{record.time:%H:%M:%S} | {record.channel} | {record.level_name} | {record.message}"
)


@dataclass
class ToolkitLogger:
    """A named logger for one area of the toolkit.

    Messages use brace formatting and are only rendered when a handler
    accepts the record:

        logger = ToolkitLogger("Duality")
        logger.debug("found {} minimal covers", len(covers))
    """

    name: str
    _logger: logbook.Logger = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self._logger = logbook.Logger("{}.{}".format(CHANNEL_PREFIX, self.name))

    def debug(self, msg, *args, **kwargs):
        self._logger.debug(msg, *args, **kwargs)

    def info(self, msg, *args, **kwargs):
        self._logger.info(msg, *args, **kwargs)

    def warning(self, msg, *args, **kwargs):
        self._logger.warning(msg, *args, **kwargs)

    def error(self, msg, *args, **kwargs):
        self._logger.error(msg, *args, **kwargs)

    def exception(self, msg, *args, **kwargs):
        self._logger.exception(msg, *args, **kwargs)


def setup_event_logger(debug: bool = False) -> logbook.NestedSetup:
    """Handlers for a CLI invocation: everything below the chosen level is
    swallowed, the rest goes to stderr so stdout stays a clean report.
    """
    level = logbook.DEBUG if debug else logbook.INFO
    stderr = logbook.StderrHandler(level=level, bubble=False)
    stderr.format_string = STDERR_FORMAT
    return logbook.NestedSetup([logbook.NullHandler(), stderr])
