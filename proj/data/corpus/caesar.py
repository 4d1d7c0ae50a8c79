import string

ALPHA = string.ascii_lowercase


def shift_char(ch, k):
    if ch.lower() not in ALPHA:
        return ch
    idx = (ALPHA.index(ch.lower()) + k) % 26
    out = ALPHA[idx]
    return out.upper() if ch.isupper() else out


def encrypt(text, k):
    return "".join(shift_char(c, k) for c in text)


def decrypt(text, k):
    return encrypt(text, -k)


def crack(cipher):
    freq_order = "etaoinshrdlu"
    best, best_score = None, -1
    for k in range(26):
        guess = decrypt(cipher, k)
        score = sum(guess.lower().count(c) * (12 - i) for i, c in enumerate(freq_order))
        if score > best_score:
            best, best_score = (k, guess), score
    return best


secret = encrypt("Attack at dawn, then retreat to the east", 7)
print(secret)
print(crack(secret))
