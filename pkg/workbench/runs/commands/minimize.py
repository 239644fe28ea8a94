import json

from runs.commands.base import RunCommand


class Command(RunCommand):
    help = "Minimize the Faddeev-Skyrme energy from the configured initial field."
    name = "minimize"

    def report(self, cfg, out, status):
        summary = json.loads((out / "report.json").read_text(encoding="utf-8"))
        trace = summary["trace"]
        self.stdout.write(
            f"{trace['iterations']} step(s), stopped on {trace['termination']}: "
            f"E = {summary['energy']['total']:.10g}"
        )
        if status != 0:
            self.stderr.write(
                "Descent halted early; final.fsk holds the last safe field"
            )
        super().report(cfg, out, status)
