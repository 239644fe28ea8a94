from runs.commands.base import RunCommand


class Command(RunCommand):
    help = "Evaluate energy and invariants of the initial field across grid sizes."
    name = "convergence"

    def report(self, cfg, out, status):
        self.stdout.write((out / "convergence.txt").read_text(encoding="utf-8"))
        super().report(cfg, out, status)
