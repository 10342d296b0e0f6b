"""Command line front end: `voxtour serve` and `voxtour voice-repl`.

The REPL is a thin client. By default it hosts the session in-process
(same operations the gateway exposes); with --url it talks to a running
gateway over HTTP instead, so both paths stay honest.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, TextIO

from .config import AppConfig, load_config
from .errors import VoxtourError
from .exploration import select_option
from .pipeline import process_query
from .service.manager import SessionManager


class LocalClient:
    """Hosts one session in-process via the same manager the gateway uses."""

    def __init__(self, config: AppConfig):
        self.manager = SessionManager(config)
        self.session_id: Optional[str] = None

    def model_keys(self) -> list[str]:
        return [m["name"] for m in self.manager.model_catalogue()]

    def create(self, model_key: str) -> dict:
        session_id, session, intro = self.manager.create(model_key)
        self.session_id = session_id
        return {
            "model_name": session.tree.model_name,
            "speeches": [intro.narration],
            "options": [],
            "scene": None,
        }

    def query(self, text: str) -> dict:
        with self.manager.exclusive(self.session_id) as session:
            result = process_query(
                text, session, self.manager.backends, self.manager.prompts
            )
            names = [session.tree.node(n).name for n in result.options]
            return {
                "speeches": [s.speech for s in result.scenes],
                "options": names,
                "scene": None,
            }

    def select(self, index: int) -> dict:
        with self.manager.exclusive(self.session_id) as session:
            scene = select_option(session, index)
            node = session.tree.node(scene.target_node_id)
            names = [session.tree.node(n).name for n in session.pending_options]
            return {
                "speeches": [scene.speech],
                "options": names,
                "scene": (scene.kind.value, node.name),
            }

    def state(self) -> dict:
        with self.manager.shared(self.session_id) as session:
            return session.snapshot()

    def tick(self, seconds: float) -> Optional[list[str]]:
        with self.manager.exclusive(self.session_id) as session:
            return [s.value for s in session.tick(seconds)]


class HttpClient:
    """Same surface as LocalClient, over a running gateway."""

    def __init__(self, base_url: str):
        import httpx

        self.http = httpx.Client(base_url=base_url, timeout=60.0)
        self.session_id: Optional[str] = None

    def _doc(self, response) -> dict:
        doc = response.json()
        if response.status_code >= 400:
            raise VoxtourError(f"{doc.get('error')}: {doc.get('detail')}")
        return doc

    def model_keys(self) -> list[str]:
        doc = self._doc(self.http.get("/models"))
        return [m["name"] for m in doc["models"]]

    def create(self, model_key: str) -> dict:
        doc = self._doc(self.http.post("/sessions", json={"model": model_key}))
        self.session_id = doc["session_id"]
        return {
            "model_name": doc["model_name"],
            "speeches": [doc["narration"]],
            "options": [],
            "scene": None,
        }

    def query(self, text: str) -> dict:
        doc = self._doc(
            self.http.post(f"/sessions/{self.session_id}/query", json={"text": text})
        )
        return {
            "speeches": [s["speech"] for s in doc["scenes"]],
            "options": [o["name"] for o in doc["options"]],
            "scene": None,
        }

    def select(self, index: int) -> dict:
        doc = self._doc(
            self.http.post(f"/sessions/{self.session_id}/select", json={"index": index})
        )
        return {
            "speeches": [doc["narration"]],
            "options": [o["name"] for o in doc["options"]],
            "scene": (doc["scene"]["kind"], doc["node"]["name"]),
        }

    def state(self) -> dict:
        return self._doc(self.http.get(f"/sessions/{self.session_id}/state"))

    def tick(self, seconds: float) -> Optional[list[str]]:
        return None  # the gateway runs its own clock


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="voxtour", description="conversational molecular tour guide"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP gateway")
    serve.add_argument("--config", help="path to a JSON config file")
    serve.add_argument("--port", type=int, help="listen port (overrides config)")
    serve.add_argument("--host", help="bind address (overrides config)")
    serve.add_argument(
        "--mock-backend", action="store_true", help="force the deterministic mock bots"
    )

    repl = sub.add_parser("voice-repl", help="drive a session from the terminal")
    repl.add_argument("--config", help="path to a JSON config file")
    repl.add_argument("--model", help="scene model key (default t4)")
    repl.add_argument("--url", help="talk to a running gateway instead of in-process")
    repl.add_argument(
        "--mock-backend", action="store_true", help="force the deterministic mock bots"
    )
    return parser


def main(
    argv: Optional[list[str]] = None,
    stdin: Optional[TextIO] = None,
    stdout: Optional[TextIO] = None,
) -> int:
    args = build_parser().parse_args(argv)
    stdin = sys.stdin if stdin is None else stdin
    out = sys.stdout if stdout is None else stdout

    config = load_config(args.config)
    if args.mock_backend:
        config.backend = "mock"

    if args.command == "serve":
        if args.port is not None:
            config.port = args.port
        if args.host is not None:
            config.host = args.host
        import uvicorn

        uvicorn.run(create_gateway(config), host=config.host, port=config.port)
        return 0

    return run_repl(args, config, stdin, out)


def create_gateway(config: AppConfig):
    from .service import create_app

    return create_app(config)


def repl_main(argv: Optional[list[str]] = None) -> int:
    """Entry point for the bare `voice-repl` console script."""
    rest = sys.argv[1:] if argv is None else argv
    return main(["voice-repl", *rest])


# --- the REPL ---

def run_repl(args, config: AppConfig, stdin: TextIO, out: TextIO) -> int:
    client = HttpClient(args.url) if args.url else LocalClient(config)

    keys = client.model_keys()
    model_key = args.model or ("t4" if "t4" in keys else keys[0])
    try:
        reply = client.create(model_key)
    except VoxtourError as exc:
        print(f"error: {exc}", file=out)
        return 1

    print(f"voxtour voice-repl, model: {reply['model_name']} ({model_key})", file=out)
    print("commands: :state  :select N  :tick S  :quit, anything else is a query", file=out)
    _show(reply, out)

    for line in _lines(stdin, out):
        line = line.strip()
        if not line:
            continue
        try:
            if line in (":quit", ":q", ":exit"):
                break
            elif line == ":state":
                _print_state(client.state(), out)
            elif line.startswith(":select"):
                number = int(line.split(maxsplit=1)[1])
                _show(client.select(number - 1), out)
            elif line.startswith(":tick"):
                seconds = float(line.split(maxsplit=1)[1])
                signals = client.tick(seconds)
                if signals is None:
                    print("  (the gateway runs its own clock)", file=out)
                else:
                    flags = ", ".join(signals) if signals else "nothing due"
                    print(f"  (ticked {seconds:g}s: {flags})", file=out)
            elif line.startswith(":"):
                print(f"error: unknown command {line.split()[0]}", file=out)
            else:
                _show(client.query(line), out)
        except VoxtourError as exc:
            print(f"error: {exc}", file=out)
        except (IndexError, ValueError):
            print("error: that command needs a number, like :select 1", file=out)

    print("bye", file=out)
    return 0


def _lines(stdin: TextIO, out: TextIO):
    if stdin.isatty():
        while True:
            try:
                yield input("you> ")
            except EOFError:
                return
    else:
        # piped input: echo commands so transcripts read like a dialogue
        for raw in stdin:
            line = raw.rstrip("\n")
            print(f"you> {line}", file=out)
            yield line


def _show(reply: dict, out: TextIO) -> None:
    for speech in reply["speeches"]:
        print(f"guide> {speech}", file=out)
    if reply.get("scene"):
        kind, name = reply["scene"]
        print(f"  scene: {kind} of {name}", file=out)
    if reply["options"]:
        numbered = "  ".join(f"{i + 1}) {n}" for i, n in enumerate(reply["options"]))
        print(f"  options: {numbered}", file=out)


def _vec(values) -> str:
    return "({:.2f}, {:.2f}, {:.2f})".format(*values)


def _print_state(doc: dict, out: TextIO) -> None:
    camera = doc["camera"]
    scene = doc["scene"]
    yes = lambda flag: "yes" if flag else "no"
    print(f"  model: {doc['model']}", file=out)
    print(f"  node: {doc['node']['name']} (scale {doc['scale_level']})", file=out)
    print(
        f"  camera: pos {_vec(camera['position'])} target {_vec(camera['target'])}",
        file=out,
    )
    print(f"  plane: {'on' if doc['plane']['enabled'] else 'off'}", file=out)
    print(
        f"  scene: {scene['kind'] if scene else 'idle'} (queued {doc['queued_scenes']})"
        f"  speaking: {yes(doc['speaking'])}  animating: {yes(doc['animating'])}",
        file=out,
    )
    if doc["options"]:
        numbered = "  ".join(
            f"{i + 1}) {o['name']}" for i, o in enumerate(doc["options"])
        )
        print(f"  options: {numbered}", file=out)
    print(f"  history: {doc['history_depth']}", file=out)


if __name__ == "__main__":
    raise SystemExit(main())
