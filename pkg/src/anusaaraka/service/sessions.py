"""In-memory editing sessions with append-only version histories.

Each session owns its source text, its pre-edit issue cache, and the list
of document versions.  Command application is serialized per session
(single writer); any past version stays readable forever.  An optional
journal file records one JSON line per version.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from ..edit import EditCommand, PreEditIssue, apply_post_edit, apply_pre_edit, check_pre_edit
from ..lexicon import Lexicon
from ..notation import Document, render
from ..pipeline import run_pipeline


class UnknownSessionError(KeyError):
    pass


@dataclass
class Session:
    id: str
    source: str
    documents: list[Document]
    issues: list[PreEditIssue]
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def version(self) -> int:
        return len(self.documents) - 1

    def document(self, version: int | None = None) -> Document:
        if version is None:
            version = self.version
        if version < 0 or version >= len(self.documents):
            raise IndexError(f"no version {version}")
        return self.documents[version]


class SessionStore:
    def __init__(self, lexicon: Lexicon, journal_path: str | Path | None = None):
        self._lexicon = lexicon
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._journal_path = Path(journal_path) if journal_path else None

    def _journal(self, session: Session, event: str, command: str | None = None) -> None:
        if self._journal_path is None:
            return
        record = {
            "session": session.id,
            "version": session.version,
            "event": event,
            "source": session.source,
            "notation": render(session.documents[-1], 2),
        }
        if command is not None:
            record["command"] = command
        with self._journal_path.open("a", encoding="utf-8") as handle:
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")

    def create(self, text: str) -> Session:
        session = Session(
            id=uuid.uuid4().hex[:12],
            source=text,
            documents=[run_pipeline(text, self._lexicon)],
            issues=check_pre_edit(text, self._lexicon),
        )
        with self._lock:
            self._sessions[session.id] = session
        self._journal(session, "create")
        return session

    def get(self, session_id: str) -> Session:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise UnknownSessionError(session_id)

    def apply_preedit(self, session_id: str, token_index: int, replacement: str,
                      span: int = 1) -> Session:
        session = self.get(session_id)
        with session.lock:
            session.source = apply_pre_edit(session.source, token_index, replacement, span)
            session.issues = check_pre_edit(session.source, self._lexicon)
            session.documents.append(run_pipeline(session.source, self._lexicon))
            self._journal(session, "preedit")
        return session

    def apply_command(self, session_id: str, command: EditCommand) -> Session:
        session = self.get(session_id)
        with session.lock:
            new_doc = apply_post_edit(session.documents[-1], command, self._lexicon)
            session.documents.append(new_doc)
            self._journal(session, "command", command=f"{command.verb}")
        return session
