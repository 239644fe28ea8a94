from runs.commands.base import RunCommand


class Command(RunCommand):
    help = "Run the algebraic and refinement identity suites."
    name = "identities"

    def report(self, cfg, out, status):
        self.stdout.write((out / "identities.txt").read_text(encoding="utf-8"))
        super().report(cfg, out, status)
