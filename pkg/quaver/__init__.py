r"""
  __ _ _   _  __ ___   _____ _ __
 / _` | | | |/ _` \ \ / / _ \ '__|
| (_| | |_| | (_| |\ V /  __/ |
 \__, |\__,_|\__,_| \_/ \___|_|
    |_|

quaver

Learns transition rules from monophonic MIDI tunes, samples new tunes by
simulating amplitude-encoded quantum circuits, and sings them with a formant
synthesizer.
"""
