import re

EMAIL = re.compile(r"^[\w.+-]+@[\w-]+(\.[\w-]+)+$")


class ValidationError(Exception):
    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


def require(record, field, kind=str):
    if field not in record:
        raise ValidationError(field, "missing")
    value = record[field]
    if not isinstance(value, kind):
        raise ValidationError(field, f"expected {kind.__name__}")
    return value


def validate_user(record):
    errors = []
    checks = [
        lambda: require(record, "name"),
        lambda: require(record, "age", int),
        lambda: EMAIL.match(require(record, "email")) or (_ for _ in ()).throw(
            ValidationError("email", "malformed")),
    ]
    for check in checks:
        try:
            check()
        except ValidationError as err:
            errors.append(str(err))
    return errors


print(validate_user({"name": "x", "age": 3, "email": "x@y.org"}))
print(validate_user({"name": 5, "email": "bad"}))
