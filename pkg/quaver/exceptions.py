"""Custom exception type definitions."""


class QuaverException(Exception):
    """Base exception for the quaver package."""


class QuaverConfigException(QuaverException):
    """Raised when a setting or parameter lies outside of its valid range."""


class QuaverMalformedFileException(QuaverException):
    """Raised when a MIDI file has a bad header, chunk length or event."""


class QuaverUnsupportedFormatException(QuaverException):
    """Raised for valid MIDI files that can't be processed; e.g. SMF 2."""


class QuaverPolyphonyException(QuaverException):
    """Raised when two notes of a supposedly monophonic tune overlap."""


class QuaverCapacityException(QuaverException):
    """Raised when a tune has more pitches or durations than codes allow."""


class QuaverUnknownSymbolException(QuaverException):
    """Raised when encoding an event whose pitch or duration isn't tabled."""


class QuaverUnknownCodeException(QuaverException):
    """Raised when a code has no entry in the lexicon or tables."""


class QuaverSequenceTooShortException(QuaverException):
    """Raised when a sequence holds fewer than order + 1 events."""


class QuaverDeadEndException(QuaverException):
    """Raised when a context has no transition rule."""


class QuaverFormatException(QuaverException):
    """Raised when a rules file can't be read back."""


class QuaverNotNormalizedException(QuaverException):
    """Raised when a target state vector doesn't have unit norm."""


class QuaverNegativeAmplitudeException(QuaverException):
    """Raised when a target state vector has a negative entry."""


class QuaverEmptyRulesException(QuaverException):
    """Raised when generating from a rule set without any rows."""


class QuaverRetriesExhaustedException(QuaverException):
    """Raised when wrong events keep being measured for a single round."""

    def __init__(self, message: str, round: int):
        super().__init__(message)
        self.round = round
