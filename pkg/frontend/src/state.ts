/** UI session state: a mirror of the service's session JSON plus
 * selection, a visible history strip, and a what-if preview overlay.
 *
 * The single source of truth is the service.  Every move round-trips
 * through it; this module never computes geometry.  Previews run on a
 * forked throwaway session so the committed session cannot drift from
 * what the preview showed.
 */

import {
  ApiError,
  Client,
  type DiagramJson,
  type Move,
  type SessionState,
  type Template,
} from "./api.js";

export type Selection =
  | { kind: "vertex"; index: number }
  | { kind: "cut"; index: number };

export interface HistoryEntry {
  move: Move;
  /** Move count after this entry was applied (for the history strip). */
  moves: number;
}

export type MoveOutcome =
  | { applied: true }
  | { applied: false; code: string; message: string };

export type PreviewOverlay =
  | {
      kind: "ok";
      move: Move;
      session: SessionState;
      svg: string;
      /** Fork id, already deleted by the time the overlay is returned. */
      forkId: string;
    }
  | {
      kind: "blocked";
      move: Move;
      code: string;
      message: string;
      forkId: string;
    };

export class ExplorerSession {
  selection: Selection | null = null;
  history: HistoryEntry[] = [];
  preview: PreviewOverlay | null = null;

  private constructor(
    readonly client: Client,
    public state: SessionState,
    public svg: string,
  ) {}

  get id(): string {
    return this.state.id;
  }

  /** Create from a template, fork from diagram JSON, or re-load by id. */
  static async loadOrCreate(
    client: Client,
    source:
      | { template: Template }
      | { diagram: DiagramJson }
      | { id: string },
  ): Promise<ExplorerSession> {
    let state: SessionState;
    if ("template" in source) {
      state = await client.createFromTemplate(source.template);
    } else if ("diagram" in source) {
      state = await client.createFromDiagram(source.diagram);
    } else {
      state = await client.getSession(source.id);
    }
    const svg = await client.renderSvg(state.id);
    return new ExplorerSession(client, state, svg);
  }

  labels(): string[] {
    return this.state.vertices.map((v) => v.label);
  }

  select(selection: Selection | null): void {
    this.selection = selection;
  }

  /** Apply one move.  On success the mirror and SVG refresh and the move
   * joins the history strip; on a blocked move nothing changes and the
   * obstruction is reported. */
  async apply(move: Move): Promise<MoveOutcome> {
    this.preview = null;
    try {
      this.state = await this.client.applyMove(this.state.id, move);
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        return { applied: false, code: err.code, message: err.message };
      }
      throw err;
    }
    this.svg = await this.client.renderSvg(this.state.id);
    this.history.push({ move, moves: this.state.moves });
    return { applied: true };
  }

  /** Revert the last move (history truncation on the service). */
  async undo(): Promise<MoveOutcome> {
    this.preview = null;
    try {
      this.state = await this.client.undo(this.state.id);
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        return { applied: false, code: err.code, message: err.message };
      }
      throw err;
    }
    this.svg = await this.client.renderSvg(this.state.id);
    this.history.pop();
    return { applied: true };
  }

  /** What-if preview: fork the current diagram into a throwaway session,
   * try the move there, and always delete the fork.  The committed
   * session is never touched, so a blocked preview cannot change state
   * and a successful preview shows exactly what apply() would produce. */
  async whatIfPreview(move: Move): Promise<PreviewOverlay> {
    const fork = await this.client.createFromDiagram(this.state.diagram);
    try {
      let overlay: PreviewOverlay;
      try {
        const session = await this.client.applyMove(fork.id, move);
        const svg = await this.client.renderSvg(fork.id);
        overlay = { kind: "ok", move, session, svg, forkId: fork.id };
      } catch (err) {
        if (err instanceof ApiError && err.status === 409) {
          overlay = {
            kind: "blocked",
            move,
            code: err.code,
            message: err.message,
            forkId: fork.id,
          };
        } else {
          throw err;
        }
      }
      this.preview = overlay;
      return overlay;
    } finally {
      await this.client.deleteSession(fork.id);
    }
  }

  /** Re-fetch the authoritative state (used by tests and recovery). */
  async refresh(): Promise<void> {
    this.state = await this.client.getSession(this.state.id);
    this.svg = await this.client.renderSvg(this.state.id);
  }
}
