/** Browser entry point: wires the session store to the DOM.
 *
 * Layout (see index.html): a toolbar with template/create controls, an
 * SVG pane (pan with drag, zoom with the wheel), move buttons that act
 * on the current selection, a what-if preview toggle, a history strip,
 * and a label/obstruction readout.
 */

import { ApiError, Client, type Move } from "./api.js";
import { ExplorerSession, type Selection } from "./state.js";
import {
  IDENTITY_VIEW,
  hitFromTarget,
  pan,
  toCss,
  zoomAt,
  type ViewTransform,
} from "./view.js";

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing #${id}`);
  return found as T;
}

const statusLine = () => el<HTMLElement>("status");

function showError(message: string): void {
  statusLine().textContent = message;
  statusLine().className = "status error";
}

function showInfo(message: string): void {
  statusLine().textContent = message;
  statusLine().className = "status";
}

class App {
  private session: ExplorerSession | null = null;
  private view: ViewTransform = IDENTITY_VIEW;
  private previewMode = false;

  constructor(private client: Client) {}

  bind(): void {
    el<HTMLButtonElement>("create").addEventListener("click", () => {
      void this.create();
    });
    el<HTMLButtonElement>("undo").addEventListener("click", () => {
      void this.undo();
    });
    el<HTMLInputElement>("preview-mode").addEventListener("change", (ev) => {
      this.previewMode = (ev.target as HTMLInputElement).checked;
    });
    for (const name of ["trade", "slide", "translate", "mutate", "smooth"]) {
      el<HTMLButtonElement>(`move-${name}`).addEventListener("click", () => {
        void this.moveFromSelection(name);
      });
    }
    const pane = el<HTMLDivElement>("svg-pane");
    pane.addEventListener("click", (ev) => {
      const hit = hitFromTarget(ev.target as Element);
      if (!hit || !this.session) return;
      const selection: Selection =
        hit.kind === "vertex" || hit.kind === "label"
          ? { kind: "vertex", index: hit.index }
          : hit.kind === "cut"
            ? { kind: "cut", index: hit.index }
            : { kind: "cut", index: hit.cut };
      this.session.select(selection);
      this.renderSelection();
    });
    pane.addEventListener("wheel", (ev) => {
      ev.preventDefault();
      const factor = ev.deltaY < 0 ? 1.15 : 1 / 1.15;
      const rect = pane.getBoundingClientRect();
      this.view = zoomAt(
        this.view,
        ev.clientX - rect.left,
        ev.clientY - rect.top,
        factor,
      );
      this.applyView();
    });
    let dragging: { x: number; y: number } | null = null;
    pane.addEventListener("pointerdown", (ev) => {
      dragging = { x: ev.clientX, y: ev.clientY };
      pane.setPointerCapture(ev.pointerId);
    });
    pane.addEventListener("pointermove", (ev) => {
      if (!dragging) return;
      this.view = pan(this.view, ev.clientX - dragging.x, ev.clientY - dragging.y);
      dragging = { x: ev.clientX, y: ev.clientY };
      this.applyView();
    });
    pane.addEventListener("pointerup", () => {
      dragging = null;
    });
  }

  private async create(): Promise<void> {
    const n = Number(el<HTMLInputElement>("tpl-n").value || "11");
    const a = Number(el<HTMLInputElement>("tpl-a").value || "3");
    const kind = el<HTMLSelectElement>("tpl-kind").value;
    try {
      this.session = await ExplorerSession.loadOrCreate(this.client, {
        template:
          kind === "wedge" ? { kind: "wedge", n, a } : { kind: "pi-minus", n, a },
      });
      this.view = IDENTITY_VIEW;
      showInfo(`session ${this.session.id}`);
      this.render();
    } catch (err) {
      showError(err instanceof ApiError ? `${err.code}: ${err.message}` : String(err));
    }
  }

  private moveForSelection(name: string): Move | null {
    if (!this.session) return null;
    const sel = this.session.selection;
    if (name === "trade" || name === "smooth") {
      if (sel?.kind !== "vertex") return null;
      return { move: name, vertex: sel.index };
    }
    if (sel?.kind !== "cut") return null;
    if (name === "mutate") return { move: "mutate", cut: sel.index };
    if (name === "slide") {
      const nodes = el<HTMLInputElement>("slide-nodes").value
        .split(",")
        .map((s) => s.trim())
        .filter(Boolean);
      return { move: "slide", cut: sel.index, nodes };
    }
    const base = el<HTMLInputElement>("translate-base").value
      .split(",")
      .map((s) => s.trim());
    return { move: "translate", cut: sel.index, base };
  }

  private async moveFromSelection(name: string): Promise<void> {
    if (!this.session) return;
    const move = this.moveForSelection(name);
    if (!move) {
      showError(`select a ${name === "trade" || name === "smooth" ? "vertex" : "cut"} first`);
      return;
    }
    try {
      if (this.previewMode) {
        const overlay = await this.session.whatIfPreview(move);
        if (overlay.kind === "blocked") {
          showError(`preview: ${overlay.code}: ${overlay.message}`);
        } else {
          showInfo("preview shown; committed state unchanged");
        }
        this.render();
        return;
      }
      const outcome = await this.session.apply(move);
      if (!outcome.applied) {
        showError(`${outcome.code}: ${outcome.message}`);
      } else {
        showInfo(`${move.move} applied`);
      }
      this.render();
    } catch (err) {
      showError(err instanceof ApiError ? `${err.code}: ${err.message}` : String(err));
    }
  }

  private async undo(): Promise<void> {
    if (!this.session) return;
    const outcome = await this.session.undo();
    if (!outcome.applied) showError(`${outcome.code}: ${outcome.message}`);
    else showInfo("undone");
    this.render();
  }

  private applyView(): void {
    const host = el<HTMLDivElement>("svg-host");
    host.style.transform = toCss(this.view);
  }

  private renderSelection(): void {
    const sel = this.session?.selection ?? null;
    el<HTMLElement>("selection").textContent = sel
      ? `${sel.kind} ${sel.index}`
      : "nothing selected";
    for (const marked of document.querySelectorAll(".selected")) {
      marked.classList.remove("selected");
    }
    if (!sel) return;
    const id = sel.kind === "vertex" ? `vertex-${sel.index}` : `cut-${sel.index}`;
    document.getElementById(id)?.classList.add("selected");
  }

  private render(): void {
    if (!this.session) return;
    const ghost = this.session.preview;
    el<HTMLDivElement>("svg-host").innerHTML =
      ghost && ghost.kind === "ok" ? ghost.svg : this.session.svg;
    this.applyView();
    el<HTMLElement>("labels").textContent = this.session.labels().join("   ");
    el<HTMLElement>("history").textContent = this.session.history
      .map((h) => h.move.move)
      .join(" → ");
    el<HTMLElement>("area").textContent = this.session.state.area2
      ? `2·area = ${this.session.state.area2}`
      : "unbounded";
    this.renderSelection();
  }
}

const base =
  new URLSearchParams(window.location.search).get("service") ??
  "http://127.0.0.1:8323";
const app = new App(new Client(base));
app.bind();
showInfo(`service: ${base} — create a session to begin`);
