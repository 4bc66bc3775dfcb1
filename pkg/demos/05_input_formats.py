#!/usr/bin/env python3
"""Getting states in and results out: ket expressions, JSON, and the CLI.

The same analysis is reachable three ways: the Python API, inline ket
expressions, and the JSON state format that the ``rotbell`` command consumes.
"""

import json

import numpy as np

from rotbell import (
    classify,
    parse_ket,
    parse_ket_info,
    render_ket,
    state_from_json,
    state_to_json,
)

print("ket expressions (whitespace-insensitive, normalized on load):")
for expr in ("|01>", "|000> + |111>", "(1+1i)*|0> + |1>", "|00> - 0.5*|11>"):
    info = parse_ket_info(expr)
    amps = ", ".join(f"{a:.4f}" for a in info.state.amplitudes)
    note = f"(renormalized from {info.input_norm:.4f})" if info.normalized else ""
    print(f"  {expr!r:<24} -> [{amps}] {note}")
print()

print("render_ket round-trips any pure state through the grammar:")
state = parse_ket("(0.6+0.0i)*|00> + (0.0-0.8i)*|11>")
text = render_ket(state)
back = parse_ket(text)
print(f"  {text}")
print(f"  max amplitude deviation after round trip: "
      f"{np.max(np.abs(back.amplitudes - state.amplitudes)):.2e}\n")

print("JSON wire format (files or stdin for the CLI):")
doc = state_to_json(state)
print(f"  {json.dumps(doc)[:66]}...")
again = state_from_json(doc)
print(f"  parsed back: {again!r}\n")

rep = classify(state)
print("classification of that state:")
print(f"  r = {rep.r:.6f}, LHV violated: {rep.lhv_violated}, "
      f"critical visibility: {rep.critical_visibility}")
print()

print("equivalent command lines:")
print("""  rotbell analyze --ket "|000>+|111>" --format json
  rotbell analyze --input state.json --oracle
  echo '{"n": 2, ...}' | rotbell analyze --input - --format csv
  rotbell ghz --n 4
  rotbell sweep --ket "|000>+|111>" --steps 101 --format csv
  rotbell zoo --nmin 2 --nmax 6 --samples 50 --seed 0
  rotbell verify""")
