#!/usr/bin/env python3
"""
Unitary Local Factors

局所因子・Weil 定数・転送因子・GGP 符号の検証ドライバ
- verify: 恒等式スイートの実行（JSON lines レポート）
- ggp: 指標の和からなる (φ, φ') の二分法
- param: 転送因子の評価と入れ替え比の測定
- constants: 定数表の参照
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

# src をパスに追加
sys.path.insert(0, str(Path(__file__).parent))

from analyzers.suite_runner import run_suite
from data_structures.characters import MultiplicativeCharacter
from data_structures.errors import ConfigError, LocalFactorError
from data_structures.local_field import ExtKind, FieldConfig
from data_structures.parameters import CClass, GammaClass, XiParameter
from data_structures.reports import SUITES, encode_value, load_run_config
from engines.langlands_engine import constants_table, ggp_dichotomy, parameter_from_json
from engines.transfer_engine import (
    default_gamma, swap_ratio_by_parity, transfer_factor_twisted, transfer_factor_unitary
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def setup_logging(verbose: bool = False):
    """ログ設定"""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )


def load_json_argument(value: str) -> Any:
    """JSON 文字列、または JSON ファイルのパス"""
    path = Path(value)
    text = path.read_text(encoding="utf-8") if path.is_file() else value
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"invalid JSON argument {value!r}: {e}") from e


def field_from_args(args) -> FieldConfig:
    try:
        return FieldConfig(p=args.p, working_precision=args.precision, ext_kind=ExtKind(args.ext))
    except ValueError as e:
        raise ConfigError(f"invalid field: {e}") from e


def _split_list(value: Optional[str]) -> Optional[List[str]]:
    if value is None:
        return None
    return [item.strip() for item in value.split(",") if item.strip()]


# --- サブコマンド ---

def cmd_verify(args) -> int:
    """スイートを実行してレポートを書き出す"""
    overrides: Dict[str, Any] = {
        "primes": _split_list(args.p),
        "ext_kinds": _split_list(args.ext),
        "precision": args.precision,
        "tolerance": args.tolerance,
        "samples": args.samples,
        "seed": args.seed,
        "workers": args.workers,
        "output": args.out,
        "record_timings": True if args.timings else None,
    }
    config = load_run_config(args.config, overrides)
    report = run_suite(config, args.suite)
    body = report.to_json_lines()

    if config.output:
        output_path = Path(config.output)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        output_path.write_text(body, encoding="utf-8")
        status = "✅" if report.all_passed else "❌"
        print(f"{status} {args.suite}: {report.passed_count}/{len(report.reports)} passed, "
              f"{report.failed_count} failed, {report.error_count} errors")
        print(f"📄 Report: {output_path}")
    else:
        sys.stdout.write(body)

    return EXIT_OK if report.all_passed else EXIT_FAILURE


def cmd_ggp(args) -> int:
    """GGP の二分法を一組の (φ, φ') について計算する"""
    field = field_from_args(args)
    phi = parameter_from_json(field, load_json_argument(args.phi))
    phi_prime = parameter_from_json(field, load_json_argument(args.phiprime))
    outcome = ggp_dichotomy(phi, phi_prime, args.mug)
    print(json.dumps(outcome.to_json(), sort_keys=True, ensure_ascii=False))
    return EXIT_OK


def cmd_eval_transfer(args) -> int:
    """転送因子を一点で評価する"""
    field = field_from_args(args)
    xi_plus = XiParameter.from_json(field, load_json_argument(args.xi_plus))
    xi_minus = XiParameter.from_json(field, load_json_argument(args.xi_minus))
    mu_plus = MultiplicativeCharacter.from_text(field, args.mu_plus)
    mu_minus = MultiplicativeCharacter.from_text(field, args.mu_minus)

    if args.twisted:
        if args.gamma is not None:
            gamma = GammaClass.from_json(field, load_json_argument(args.gamma))
        else:
            gamma = default_gamma(xi_plus.disjoint_union(xi_minus))
        value = transfer_factor_twisted(xi_plus, xi_minus, gamma, mu_plus, mu_minus)
    else:
        xi = xi_plus.disjoint_union(xi_minus)
        signs = load_json_argument(args.c) if args.c is not None else [1] * len(xi.dihedral_indices)
        value = transfer_factor_unitary(xi_plus, xi_minus, CClass(tuple(signs)), mu_plus, mu_minus, args.nu)

    print(json.dumps({"phase": encode_value(value.phase), "value": encode_value(value)}, sort_keys=True))
    return EXIT_OK


def cmd_swap_ratio(args) -> int:
    """Δ(ξ1, ξ2, c) / Δ(ξ2, ξ1, c) をパリティ類ごとに表示する"""
    field = field_from_args(args)
    xi_1 = XiParameter.from_json(field, load_json_argument(args.xi_plus))
    xi_2 = XiParameter.from_json(field, load_json_argument(args.xi_minus))
    mu_plus = MultiplicativeCharacter.from_text(field, args.mu_plus)
    mu_minus = MultiplicativeCharacter.from_text(field, args.mu_minus)
    ratios = swap_ratio_by_parity(xi_1, xi_2, mu_plus, mu_minus, args.nu)
    print(json.dumps({str(parity): sign for parity, sign in sorted(ratios.items())}, sort_keys=True))
    return EXIT_OK


def cmd_constants(args) -> int:
    field = field_from_args(args)
    value = constants_table(field, args.query, args.first, args.second,
                            quasi_split=not args.non_quasi_split)
    print(json.dumps({"query": args.query, "value": encode_value(value),
                      "phase": encode_value(value.phase) if value.phase is not None else None},
                     sort_keys=True))
    return EXIT_OK


def _add_field_arguments(parser: argparse.ArgumentParser):
    parser.add_argument('--p', type=int, default=3, help='Odd prime p (default: 3)')
    parser.add_argument('--ext', default=ExtKind.UNRAMIFIED.value,
                        choices=[kind.value for kind in ExtKind], help='Quadratic extension kind')
    parser.add_argument('--precision', type=int, default=20, help='Working precision (default: 20)')


def _sign(value: str) -> int:
    if value not in ("+1", "1", "-1"):
        raise argparse.ArgumentTypeError(f"expected +1 or -1, got {value!r}")
    return int(value)


def create_parser():
    """コマンドライン引数パーサーの作成"""
    parser = argparse.ArgumentParser(
        description='Unitary Local Factors verification driver',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
使用例:
  # Weil 定数のスイートを p = 3, 5 で
  python src/main.py verify weil --p 3,5 --out reports/weil.jsonl

  # 設定ファイルを使って全スイート
  python src/main.py verify all --config run.cfg

  # GGP の二分法
  python src/main.py ggp --p 5 --phi '[]' --phiprime '[{"character": "E:0::0", "multiplicity": 1}]' --mug +1

  # 転送因子の評価
  python src/main.py param eval-transfer --p 5 --xi-plus '[]' --xi-minus '[]' --mu-plus E:0::0 --mu-minus E:0::0
        """
    )
    parser.add_argument('-v', '--verbose', action='store_true', help='Verbose output')
    subparsers = parser.add_subparsers(dest='command')

    verify = subparsers.add_parser('verify', help='Run an identity suite')
    verify.add_argument('suite', choices=SUITES + ['all'], help='Suite to run')
    verify.add_argument('--config', help='key=value configuration file')
    verify.add_argument('--p', help='Comma separated odd primes')
    verify.add_argument('--ext', help='Comma separated extension kinds')
    verify.add_argument('--precision', type=int, help='Working precision')
    verify.add_argument('--tolerance', type=float, help='Comparison tolerance')
    verify.add_argument('--samples', type=int, help='Random instances per item')
    verify.add_argument('--seed', type=int, help='Random seed')
    verify.add_argument('--workers', type=int, help='Worker threads')
    verify.add_argument('--out', help='Report file (JSON lines); stdout when omitted')
    verify.add_argument('--timings', action='store_true', help='Record wall_time_ms per item')

    ggp = subparsers.add_parser('ggp', help='GGP dichotomy for (phi, phi\')')
    _add_field_arguments(ggp)
    ggp.add_argument('--phi', required=True, help='Even-dimensional parameter (JSON or file)')
    ggp.add_argument('--phiprime', required=True, help='Odd-dimensional parameter (JSON or file)')
    ggp.add_argument('--mug', type=_sign, required=True, help='mu(G): +1 or -1')

    param = subparsers.add_parser('param', help='Transfer factor tools')
    param_commands = param.add_subparsers(dest='param_command')
    for name, help_text in (('eval-transfer', 'Evaluate a transfer factor'),
                            ('swap-ratio', 'Measure the swap ratio per parity class')):
        sub = param_commands.add_parser(name, help=help_text)
        _add_field_arguments(sub)
        sub.add_argument('--xi-plus', required=True, help='xi_+ (JSON or file)')
        sub.add_argument('--xi-minus', required=True, help='xi_- (JSON or file)')
        sub.add_argument('--mu-plus', required=True, help='mu_+ as tag:depth:exponents:phase')
        sub.add_argument('--mu-minus', required=True, help='mu_- as tag:depth:exponents:phase')
        sub.add_argument('--nu', type=int, default=1, help='nu in F^x (default: 1)')
        if name == 'eval-transfer':
            sub.add_argument('--c', help='C(xi) signs as a JSON list')
            sub.add_argument('--gamma', help='Gamma(xi) entries as JSON')
            sub.add_argument('--twisted', action='store_true', help='Twisted transfer factor')

    constants = subparsers.add_parser('constants', help='Constants table lookup')
    _add_field_arguments(constants)
    constants.add_argument('query', choices=['c_pair', 's_ratio', 'gamma_TE'])
    constants.add_argument('first', type=int, help='d (or d_+)')
    constants.add_argument('second', type=int, help="d' (or d_-)")
    constants.add_argument('--non-quasi-split', action='store_true', help='Non quasi-split gamma_TE')

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """メイン処理"""
    parser = create_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose)

    handlers = {
        'verify': cmd_verify,
        'ggp': cmd_ggp,
        'constants': cmd_constants,
    }
    if args.command == 'param':
        handler = {'eval-transfer': cmd_eval_transfer,
                   'swap-ratio': cmd_swap_ratio}.get(args.param_command)
    else:
        handler = handlers.get(args.command)
    if handler is None:
        parser.print_help()
        return EXIT_USAGE

    try:
        return handler(args)
    except ConfigError as e:
        print(f"❌ Configuration error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (LocalFactorError, ValueError) as e:
        print(f"❌ Error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE if args.command != 'verify' else EXIT_FAILURE
    except KeyboardInterrupt:
        print("\nOperation cancelled by user")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
