import datetime as dt

HOLIDAYS = {dt.date(2024, 1, 1), dt.date(2024, 12, 25)}


def is_workday(day):
    return day.weekday() < 5 and day not in HOLIDAYS


def add_workdays(start, n):
    day = start
    step = 1 if n >= 0 else -1
    remaining = abs(n)
    while remaining:
        day += dt.timedelta(days=step)
        if is_workday(day):
            remaining -= 1
    return day


def plan(tasks, start):
    schedule = []
    cursor = start
    for name, days in tasks:
        end = add_workdays(cursor, days)
        schedule.append((name, cursor, end))
        cursor = end
    return schedule


for name, begin, end in plan([("design", 3), ("build", 10), ("review", 2)], dt.date(2024, 12, 20)):
    print(f"{name:8} {begin.isoformat()} -> {end:%a %d %b}")
