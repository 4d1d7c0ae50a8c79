class InsufficientFunds(Exception):
    pass


class Account:
    interest_rate = 0.02

    def __init__(self, owner, balance=0):
        self.owner = owner
        self.balance = balance
        self.log = []

    def deposit(self, amount):
        if amount <= 0:
            raise ValueError("deposit must be positive")
        self.balance += amount
        self.log.append(("deposit", amount))

    def withdraw(self, amount):
        if amount > self.balance:
            raise InsufficientFunds(f"{self.owner} has only {self.balance}")
        self.balance -= amount
        self.log.append(("withdraw", amount))

    def accrue(self):
        gained = self.balance * self.interest_rate
        self.balance += gained
        return gained


def transfer(src, dst, amount):
    try:
        src.withdraw(amount)
    except InsufficientFunds as exc:
        print("transfer failed:", exc)
        return False
    else:
        dst.deposit(amount)
        return True
    finally:
        print("transfer attempted")


alice = Account("alice", 100)
bob = Account("bob")
transfer(alice, bob, 30)
transfer(bob, alice, 500)
