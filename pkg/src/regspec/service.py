"""HTTP JSON API over the engine, generation and CNL operations.

Rulesets load once at startup from a directory (one JSON ruleset per file,
id = file stem, optional sidecar <id>.cnl); everything after that is
read-only, so concurrent requests share the registries freely. Endpoint
semantics delegate 1:1 to the library: a response is a pure function of
the request body and the loaded ruleset (generation is deterministic in
the seed). Unknown ruleset or spec is 404, malformed bodies are 400.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import mmsr
from .cnl import CnlDocument, abstract, parse as parse_cnl, render, soundness_check, traceback
from .datagen import BUILTIN_GENERATORS, GenContext, sample
from .engine import explain as explain_value, validate as validate_value
from .errors import CnlError, CnlSyntaxError, MessageFormatError, RegspecError
from .keywords import Keyword, keyword
from .registry import Registry
from .ruleset import dump_ruleset, load_ruleset
from .values import value_from_json, value_to_json


@dataclass(frozen=True)
class LoadedRuleset:
    id: str
    registry: Registry
    root: Keyword
    cnl_doc: CnlDocument
    cnl_text: str


class _ApiError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


def load_rulesets_dir(path: str | Path) -> dict[str, LoadedRuleset]:
    """Load every *.json ruleset in a directory, with optional .cnl sidecars."""
    lib = mmsr.predicate_library()
    out: dict[str, LoadedRuleset] = {}
    for file in sorted(Path(path).glob("*.json")):
        if file.name.endswith(".expected.json"):
            continue
        try:
            registry, root = load_ruleset(file, lib)
        except RegspecError:
            continue  # directories may hold non-ruleset JSON; skip quietly
        sidecar = file.with_suffix(".cnl")
        if sidecar.exists():
            text = sidecar.read_text(encoding="utf-8")
            doc = parse_cnl(text)
        else:
            doc = abstract(registry, root)
            text = render(doc)
        out[file.stem] = LoadedRuleset(file.stem, registry, root, doc, text)
    return out


def build_app(rulesets_dir: str | Path | None = None) -> FastAPI:
    """The API over one directory of rulesets (default: the shipped bundle)."""
    if rulesets_dir is None:
        rulesets = load_rulesets_dir(mmsr.data_dir())
    else:
        rulesets = load_rulesets_dir(rulesets_dir)
    return create_app(rulesets)


def create_app(rulesets: dict[str, LoadedRuleset]) -> FastAPI:
    app = FastAPI(title="regspec service", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    lib = mmsr.predicate_library()

    @app.exception_handler(_ApiError)
    async def api_error(request: Request, exc: _ApiError):
        return JSONResponse(status_code=exc.status, content={"error": exc.message})

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": "malformed request body"})

    @app.exception_handler(json.JSONDecodeError)
    async def json_error(request: Request, exc: json.JSONDecodeError):
        return JSONResponse(status_code=400, content={"error": "request body is not JSON"})

    def pick_ruleset(body: dict) -> LoadedRuleset:
        rid = body.get("ruleset-id")
        if rid is None:
            if len(rulesets) == 1:
                return next(iter(rulesets.values()))
            raise _ApiError(400, "ruleset-id is required when several rulesets are loaded")
        if not isinstance(rid, str) or rid not in rulesets:
            raise _ApiError(404, f"unknown ruleset: {rid!r}")
        return rulesets[rid]

    def pick_spec(loaded: LoadedRuleset, body: dict) -> Keyword:
        spec = body.get("spec")
        if spec is None:
            return loaded.root
        try:
            name = keyword(spec, loaded.root.namespace)
        except (TypeError, ValueError) as exc:
            raise _ApiError(400, f"bad spec keyword: {spec!r}") from exc
        if name not in loaded.registry:
            raise _ApiError(404, f"unknown spec: {name.text}")
        return name

    def decode_message(body: dict):
        if "message" not in body:
            raise _ApiError(400, "message is required")
        try:
            return value_from_json(body["message"])
        except MessageFormatError as exc:
            raise _ApiError(400, str(exc)) from exc

    async def read_body(request: Request) -> dict:
        try:
            body = await request.json()
        except json.JSONDecodeError as exc:
            raise _ApiError(400, "request body is not JSON") from exc
        if not isinstance(body, dict):
            raise _ApiError(400, "request body must be a JSON object")
        return body

    @app.post("/api/validate")
    async def api_validate(request: Request):
        body = await read_body(request)
        loaded = pick_ruleset(body)
        name = pick_spec(loaded, body)
        message = decode_message(body)
        return {"valid": validate_value(loaded.registry, name, message, lib)}

    @app.post("/api/explain")
    async def api_explain(request: Request):
        body = await read_body(request)
        loaded = pick_ruleset(body)
        name = pick_spec(loaded, body)
        message = decode_message(body)
        problems = explain_value(loaded.registry, name, message, lib)
        entries = traceback(loaded.cnl_doc, problems)
        return {
            "valid": not problems,
            "problems": [p.to_json() for p in problems],
            "traceback": [e.to_json() for e in entries],
        }

    @app.post("/api/generate")
    async def api_generate(request: Request):
        body = await read_body(request)
        loaded = pick_ruleset(body)
        name = pick_spec(loaded, body)
        count = body.get("count", 1)
        seed = body.get("seed", 0)
        size = body.get("size", 8)
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (count, seed, size)):
            raise _ApiError(400, "count, seed and size must be integers")
        if count < 0 or count > 10_000:
            raise _ApiError(400, "count must be between 0 and 10000")
        try:
            values = sample(
                loaded.registry, name, count,
                GenContext(seed=seed, size=max(size, 1)),
                lib, BUILTIN_GENERATORS,
            )
        except RegspecError as exc:
            raise _ApiError(400, f"generation failed: {exc}") from exc
        return {"messages": [value_to_json(v) for v in values]}

    @app.post("/api/cnl/parse")
    async def api_cnl_parse(request: Request):
        body = await read_body(request)
        text = body.get("cnl-text")
        if not isinstance(text, str):
            raise _ApiError(400, "cnl-text is required")
        try:
            doc = parse_cnl(text)
        except CnlSyntaxError as exc:
            return {"syntax-error": {"line": exc.line, "expected": exc.expected}}
        except CnlError as exc:
            return {"syntax-error": {"line": exc.line, "expected": str(exc)}}
        return {"document": doc.to_json()}

    @app.post("/api/cnl/check")
    async def api_cnl_check(request: Request):
        body = await read_body(request)
        loaded = pick_ruleset(body)
        text = body.get("cnl-text")
        if not isinstance(text, str):
            raise _ApiError(400, "cnl-text is required")
        try:
            doc = parse_cnl(text)
        except CnlSyntaxError as exc:
            return {"syntax-error": {"line": exc.line, "expected": exc.expected}}
        except CnlError as exc:
            return {"syntax-error": {"line": exc.line, "expected": str(exc)}}
        findings = soundness_check(doc, loaded.registry, expected_root=loaded.root)
        return {"findings": [f.to_json() for f in findings]}

    @app.get("/api/ruleset/{ruleset_id}")
    async def api_ruleset(ruleset_id: str):
        if ruleset_id not in rulesets:
            raise _ApiError(404, f"unknown ruleset: {ruleset_id!r}")
        loaded = rulesets[ruleset_id]
        dumped = dump_ruleset(loaded.registry, loaded.root, loaded.root.namespace)
        return {
            "specs": dumped["specs"],
            "root": loaded.root.text,
            "namespace": loaded.root.namespace or None,
            "cnl-text": loaded.cnl_text,
        }

    @app.get("/api/rulesets")
    async def api_rulesets():
        return {"rulesets": sorted(rulesets)}

    return app
