RAW = r"C:\path\to\file"
BYTES = b"\x00\x01binary"
MIXED = Rb'\d+' + br"\w"
DOC = '''He said "hi" and 'bye'.
Then a line with ''' "'''" ''' quotes.'''
TEMPLATE = f"{RAW!r:>30}"
JOINED = ("alpha"
          'beta'
          """gamma""")
ESCAPES = "tab\tnewline\nquote\"backslash\\"
UNICODE = "\u00e9t\u00e9"


def describe(value):
    kind = type(value).__name__
    return f"{kind}: {value!r}"


for item in (RAW, BYTES, MIXED, DOC, TEMPLATE, JOINED, ESCAPES, UNICODE):
    print(describe(item))
