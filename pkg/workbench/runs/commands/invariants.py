from runs.commands.base import RunCommand


class Command(RunCommand):
    help = "Report degree, fluxes and Hopf number of the configured initial field."
    name = "invariants"

    def report(self, cfg, out, status):
        self.stdout.write((out / "report.json").read_text(encoding="utf-8"))
        super().report(cfg, out, status)
