#!/usr/bin/env python3
# scripts/validation_script.py
"""
Script de validação dos jobs de exemplo do compilador DQIR.

Roda `verify` (via CLI, em subprocesso) em cada job de config/jobs/ e
resume os resultados. Útil para CI e validação rápida de mudanças.

Uso:
    python scripts/validation_script.py
    python scripts/validation_script.py --jobs-dir config/jobs
    python scripts/validation_script.py --only tsp_unary --save-report report.txt
"""

import sys
import subprocess
import argparse
import time
from pathlib import Path
from typing import List, Dict, Any, Optional

EXIT_MEANING = {
    0: "ok",
    1: "checagem falhou",
    2: "violação de contrato",
    3: "biblioteca insuficiente",
    4: "limite de dimensão",
}


class JobsValidator:
    """Validador dos jobs de exemplo."""

    def __init__(self, jobs_dir: Optional[str] = None, only: Optional[List[str]] = None, timeout: int = 300):
        self.project_root = Path(__file__).parent.parent
        self.jobs_dir = Path(jobs_dir) if jobs_dir else self.project_root / "config" / "jobs"
        self.only = only or []
        self.timeout = timeout
        self.results: List[Dict[str, Any]] = []

    def run_validation(self) -> bool:
        """Executa `verify` em todos os jobs."""
        print("🚀 VALIDAÇÃO DOS JOBS DQIR")
        print("=" * 60)

        jobs = self._discover_jobs()
        if not jobs:
            print(f"❌ Nenhum job encontrado em {self.jobs_dir}")
            return False

        for job in jobs:
            self._run_job(job)

        return self._generate_report()

    def _discover_jobs(self) -> List[Path]:
        print(f"🔍 Procurando jobs em {self.jobs_dir}...")
        jobs = sorted(self.jobs_dir.glob("*.json"))
        if self.only:
            jobs = [j for j in jobs if any(name in j.name for name in self.only)]
        print(f"✅ {len(jobs)} job(s)")
        return jobs

    def _run_job(self, job: Path) -> bool:
        print(f"\n🧪 Verificando: {job.name}")
        print("-" * 40)
        cmd = [sys.executable, "-m", "src.api.cli", "verify", "--job", str(job), "--no-timestamp"]
        start = time.time()
        try:
            result = subprocess.run(
                cmd,
                cwd=self.project_root,
                capture_output=True,
                text=True,
                timeout=self.timeout,
            )
        except subprocess.TimeoutExpired:
            print(f"⏰ {job.name} excedeu timeout de {self.timeout}s")
            self.results.append({"job": job.name, "success": False, "duration": self.timeout, "error": "Timeout"})
            return False

        duration = time.time() - start
        success = result.returncode == 0
        self.results.append({
            "job": job.name,
            "success": success,
            "duration": duration,
            "returncode": result.returncode,
            "stdout": result.stdout,
            "stderr": result.stderr,
        })
        if success:
            print(f"✅ {job.name} ({duration:.1f}s)")
        else:
            meaning = EXIT_MEANING.get(result.returncode, "erro")
            print(f"❌ {job.name} falhou (código {result.returncode}: {meaning})")
            for line in result.stdout.splitlines():
                if "FAIL" in line:
                    print(f"   {line}")
            if result.stderr:
                print(f"   Erro: {result.stderr[:200]}")
        return success

    def _generate_report(self) -> bool:
        print("\n" + "=" * 60)
        print("📊 RELATÓRIO FINAL")
        print("=" * 60)

        failed = [r for r in self.results if not r["success"]]
        print(f"✅ Sucessos: {len(self.results) - len(failed)}/{len(self.results)}")
        print(f"❌ Falhas: {len(failed)}")
        for r in failed:
            print(f"   ❌ {r['job']} - {r.get('error', EXIT_MEANING.get(r.get('returncode'), 'erro'))}")

        if not failed:
            print("\n🎉 Todos os jobs verificados")
        return not failed

    def save_report(self, output_file: str):
        with open(output_file, "w", encoding="utf-8") as f:
            f.write("RELATÓRIO DE VALIDAÇÃO DOS JOBS\n")
            f.write("=" * 50 + "\n\n")
            for r in self.results:
                f.write(f"Job: {r['job']}\n")
                f.write(f"Status: {'Sucesso' if r['success'] else 'Falha'}\n")
                f.write(f"Duração: {r.get('duration', 0):.1f}s\n")
                if r.get("stdout"):
                    f.write(r["stdout"] + "\n")
                if not r["success"] and r.get("stderr"):
                    f.write(f"Stderr: {r['stderr']}\n")
                f.write("\n" + "-" * 30 + "\n\n")
        print(f"📄 Relatório salvo em: {output_file}")


def main():
    parser = argparse.ArgumentParser(description="Validador dos jobs de exemplo do compilador DQIR")
    parser.add_argument("--jobs-dir", help="diretório com os jobs (padrão: config/jobs)")
    parser.add_argument("--only", nargs="*", help="filtra jobs por nome")
    parser.add_argument("--timeout", type=int, default=300)
    parser.add_argument("--save-report", help="salva relatório em arquivo")
    args = parser.parse_args()

    validator = JobsValidator(jobs_dir=args.jobs_dir, only=args.only, timeout=args.timeout)
    success = validator.run_validation()
    if args.save_report:
        validator.save_report(args.save_report)
    sys.exit(0 if success else 1)


if __name__ == "__main__":
    main()
