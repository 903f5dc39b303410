"""
Formant singing: a band-limited pulse train, optionally mixed with aspiration
noise, sung through a cascade of two-pole resonators tuned to a vowel.
"""

import dataclasses
from io import BytesIO
from math import cos, exp, floor, pi
from typing import List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.io import wavfile
from scipy.signal import lfilter

from quaver.const import DEFAULT_BPM, VOWELS
from quaver.exceptions import QuaverConfigException
from quaver.midi_io import NoteEvent

__all__ = [
    "Formant",
    "SynthParams",
    "event_frequency",
    "event_samples",
    "render",
    "resonator_coeffs",
    "write_wav",
]

PEAK = 0.9


@dataclasses.dataclass(frozen=True)
class Formant:
    frequency: float
    bandwidth: float
    gain: float = 1.0


def _preset(vowel: str, vowels: Mapping[str, Sequence]) -> Tuple[Formant, ...]:
    try:
        rows = vowels[vowel]
    except KeyError:
        raise QuaverConfigException(
            f"unknown vowel {vowel!r}, expected one of {', '.join(vowels)}"
        )
    return tuple(Formant(*map(float, row)) for row in rows)


@dataclasses.dataclass(frozen=True)
class SynthParams:
    sample_rate: int = 44100
    formants: Tuple[Formant, ...] = _preset("a", VOWELS)
    tempo: float = DEFAULT_BPM
    ppqn: int = 960
    attack_ms: float = 10.0
    release_ms: float = 40.0
    vibrato_rate: float = 5.5
    vibrato_depth: float = 15.0
    noise_mix: float = 0.05
    duration_scale: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.sample_rate <= 0:
            raise QuaverConfigException("sample rate must be positive")
        if self.tempo <= 0:
            raise QuaverConfigException("tempo must be positive")
        if self.ppqn <= 0:
            raise QuaverConfigException("ppqn must be positive")
        if self.duration_scale <= 0:
            raise QuaverConfigException("duration scale must be positive")
        if self.attack_ms < 0 or self.release_ms < 0:
            raise QuaverConfigException("envelope times can't be negative")
        if self.vibrato_depth < 0 or self.vibrato_rate < 0:
            raise QuaverConfigException("vibrato can't be negative")
        if not 0 <= self.noise_mix <= 1:
            raise QuaverConfigException("noise mix must lie in [0, 1]")
        if not 3 <= len(self.formants) <= 5:
            raise QuaverConfigException(
                f"3 to 5 formants are sung, not {len(self.formants)}"
            )
        for formant in self.formants:
            if not 0 < formant.frequency < self.sample_rate / 2:
                raise QuaverConfigException(
                    f"formant at {formant.frequency} Hz lies outside "
                    f"(0, {self.sample_rate / 2}) Hz"
                )
            if formant.bandwidth <= 0:
                raise QuaverConfigException(
                    "formant bandwidth must be positive"
                )

    @classmethod
    def for_vowel(
        cls,
        vowel: str,
        vowels: Optional[Mapping[str, Sequence]] = None,
        **kwargs,
    ) -> "SynthParams":
        """Builds parameters singing one of the vowel presets."""
        return cls(formants=_preset(vowel, vowels or VOWELS), **kwargs)


def event_frequency(event: NoteEvent) -> Optional[float]:
    """Equal-tempered frequency of a note; None for a rest."""
    if event.is_silence:
        return None
    if not 0 <= event.pitch <= 127:
        raise ValueError(f"{event.pitch} is not a MIDI pitch")
    return 440.0 * 2 ** ((event.pitch - 69) / 12)


def resonator_coeffs(
    f: float, bw: float, sr: float
) -> Tuple[float, float, float]:
    """
    Coefficients of y[t] = A x[t] + B y[t-1] + C y[t-2], a resonator with unit
    gain at DC.
    """
    c = -exp(-2 * pi * bw / sr)
    b = 2 * exp(-pi * bw / sr) * cos(2 * pi * f / sr)
    return 1 - b - c, b, c


def event_samples(event: NoteEvent, params: SynthParams) -> int:
    seconds = (
        event.duration * params.duration_scale / params.ppqn * 60 / params.tempo
    )
    return round(seconds * params.sample_rate)


def _pulse_train(f0: float, n: int, params: SynthParams) -> np.ndarray:
    sr = params.sample_rate
    t = np.arange(n) / sr
    deviation = params.vibrato_depth / 1200
    freq = f0 * 2 ** (deviation * np.sin(2 * pi * params.vibrato_rate * t))
    phase = 2 * pi * np.concatenate(([0.0], np.cumsum(freq[:-1]))) / sr
    harmonics = max(floor(sr / 2 / (f0 * 2 ** deviation)), 1)
    # sum of the first harmonics cosines in closed form
    half = np.sin(phase / 2)
    with np.errstate(divide="ignore", invalid="ignore"):
        pulse = np.sin((harmonics + 0.5) * phase) / (2 * half) - 0.5
    pulse = np.where(np.abs(half) < 1e-9, float(harmonics), pulse)
    return pulse / harmonics


def _envelope(n: int, params: SynthParams) -> np.ndarray:
    attack = round(params.attack_ms * params.sample_rate / 1000)
    release = round(params.release_ms * params.sample_rate / 1000)
    if attack + release > n:
        scale = n / (attack + release)
        attack, release = floor(attack * scale), floor(release * scale)
    envelope = np.ones(n)
    envelope[:attack] = np.linspace(0, 1, attack, endpoint=False)
    if release:
        envelope[n - release :] = np.linspace(1, 0, release)
    return envelope


def _sing(
    event: NoteEvent, n: int, index: int, params: SynthParams
) -> np.ndarray:
    f0 = event_frequency(event)
    excitation = (1 - params.noise_mix) * _pulse_train(f0, n, params)
    if params.noise_mix:
        seed = np.random.SeedSequence([params.seed, index])
        rng = np.random.default_rng(seed)
        excitation = excitation + params.noise_mix * rng.normal(0, 0.1, n)
    signal = excitation
    for formant in params.formants:
        a, b, c = resonator_coeffs(
            formant.frequency, formant.bandwidth, params.sample_rate
        )
        signal = formant.gain * lfilter([a], [1, -b, -c], signal)
    return signal * _envelope(n, params)


def render(events: Sequence[NoteEvent], params: SynthParams) -> np.ndarray:
    """
    Sings the events in order and scales the result to a 0.9 peak. Rests are
    exact silence; every event starts from a fresh filter state.
    """
    segments: List[np.ndarray] = []
    for index, event in enumerate(events):
        n = event_samples(event, params)
        if event.is_silence or n == 0:
            segments.append(np.zeros(n))
        else:
            segments.append(_sing(event, n, index, params))
    if not segments:
        return np.zeros(0)
    samples = np.concatenate(segments)
    peak = np.max(np.abs(samples)) if len(samples) else 0
    if peak > 0:
        samples = samples * (PEAK / peak)
    return samples


def write_wav(samples: np.ndarray, sr: int) -> bytes:
    """Encodes samples in [-1, 1] as a mono 16-bit PCM WAV file."""
    samples = np.asarray(samples, dtype=float)
    if not np.all(np.isfinite(samples)):
        raise ValueError("samples must be finite")
    pcm = np.round(np.clip(samples, -1, 1) * 32767).astype(np.int16)
    buffer = BytesIO()
    wavfile.write(buffer, sr, pcm)
    return buffer.getvalue()
