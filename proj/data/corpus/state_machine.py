from enum import Enum, auto


class State(Enum):
    IDLE = auto()
    RUNNING = auto()
    PAUSED = auto()
    STOPPED = auto()


TRANSITIONS = {
    (State.IDLE, "start"): State.RUNNING,
    (State.RUNNING, "pause"): State.PAUSED,
    (State.PAUSED, "resume"): State.RUNNING,
    (State.RUNNING, "stop"): State.STOPPED,
    (State.PAUSED, "stop"): State.STOPPED,
}


class Machine:
    def __init__(self):
        self.state = State.IDLE
        self.trace = [self.state]

    def fire(self, event):
        key = (self.state, event)
        if key not in TRANSITIONS:
            raise KeyError(f"{event} not allowed in {self.state.name}")
        self.state = TRANSITIONS[key]
        self.trace.append(self.state)
        return self.state


m = Machine()
for ev in ["start", "pause", "resume", "stop"]:
    m.fire(ev)
print(" -> ".join(s.name for s in m.trace))
try:
    m.fire("start")
except KeyError as err:
    print("error:", err)
