import csv
import io
import statistics

RAW = """name,dept,salary
ann,eng,120
bob,eng,95
cid,ops,70
dee,ops,82
eve,sales,60
"""


def load(text):
    reader = csv.DictReader(io.StringIO(text))
    return [dict(row, salary=int(row["salary"])) for row in reader]


def by_dept(rows):
    groups = {}
    for row in rows:
        groups.setdefault(row["dept"], []).append(row["salary"])
    return groups


def report(rows):
    lines = []
    for dept, salaries in sorted(by_dept(rows).items()):
        mean = statistics.mean(salaries)
        spread = max(salaries) - min(salaries)
        lines.append(f"{dept:<6}{len(salaries):>3}{mean:>8.1f}{spread:>6}")
    return "\n".join(lines)


print(report(load(RAW)))
