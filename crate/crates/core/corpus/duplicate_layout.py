qreg = qk.QuantumRegister(7)

layout = {qreg[0]: 12,
          qreg[1]: 11,
          qreg[2]: 13,
          qreg[3]: 17,
          qreg[4]: 14,
          qreg[5]: 12,
          qreg[6]: 6}
