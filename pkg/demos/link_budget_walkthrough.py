"""Walk through the link budget one quantity at a time.

Prints the path constant, received power over distance for several
path loss exponents, the thermal noise floor, and finally the SINR
and Shannon rate of a 100 m hop with a single active interferer.
"""

import math

from multihop import RadioConfig, path_constant, received_power, noise_power, sinr, shannon_rate

radio = RadioConfig()

print("carrier frequency : %.3g Hz" % radio.frequency_hz)
print("wavelength        : %.4f m" % (2.998e8 / radio.frequency_hz))
print("path constant K   : %.6e (unity gains, 1 m reference)" % path_constant(radio))
print()

# Received power falls off as (1/d)^eta past the 1 m reference point.
print("received power [W] at 0.1 W transmit power")
print("%10s %14s %14s %14s" % ("d [m]", "eta=2", "eta=3", "eta=4"))
for d in (1.0, 10.0, 50.0, 100.0, 200.0, 400.0):
    row = []
    for eta in (2.0, 3.0, 4.0):
        r = RadioConfig(path_loss_exponent=eta)
        row.append(received_power(r, d))
    print("%10.1f %14.4e %14.4e %14.4e" % (d, row[0], row[1], row[2]))
print()

pn = noise_power(radio)
print("noise floor       : %.6e W  (F = %.1f dB, T = %.0f K, B = %.3g Hz)"
      % (pn, radio.noise_figure_db, radio.temperature_k, radio.bandwidth_hz))
print()

# A 100 m hop heard against one co-channel transmitter 200 m away.
signal = received_power(radio, 100.0)
interference = received_power(radio, 200.0)

clean = sinr(signal, 0.0, pn)
jammed = sinr(signal, interference, pn)

print("100 m hop, no interference")
print("  SINR = %.6f  (%.2f dB)" % (clean, 10 * math.log10(clean)))
print("  rate = %.0f bit/s" % shannon_rate(radio, clean))
print("100 m hop, one interferer at 200 m")
print("  SINR = %.6f  (%.2f dB)" % (jammed, 10 * math.log10(jammed)))
print("  rate = %.0f bit/s" % shannon_rate(radio, jammed))
