/**
 * Lazily parse a batch-stream source (file path or readable, e.g. a child
 * process stdout or process.stdin) into typed events.
 *
 * The reader never reorders, drops, or duplicates events, and it verifies
 * the producer's contract as it goes: batch ids must be dense and monotone
 * from 0, and the stream must close with an `end` record.
 */

import { createReadStream } from 'node:fs'
import { createInterface } from 'node:readline'
import type { Readable } from 'node:stream'

import { PrematureEndError, ProtocolError, type StreamEvent } from './events.js'

function isStringMatrix(value: unknown): value is string[][] {
  return (
    Array.isArray(value) &&
    value.every((row) => Array.isArray(row) && row.every((t) => typeof t === 'string'))
  )
}

function isNumberArray(value: unknown): value is number[] {
  return Array.isArray(value) && value.every((v) => typeof v === 'number')
}

function requireNumber(record: Record<string, unknown>, key: string, line: number): number {
  const value = record[key]
  if (typeof value !== 'number' || !Number.isFinite(value)) {
    throw new ProtocolError(line, `field ${key} must be a finite number`)
  }
  return value
}

function parseControl(record: Record<string, unknown>, line: number): StreamEvent {
  switch (record['event']) {
    case 'checkpoint':
      return {
        kind: 'checkpoint',
        checkpoint: requireNumber(record, 'checkpoint', line),
        batches: requireNumber(record, 'batches', line),
      }
    case 'phase_advance':
      return { kind: 'phase_advance', phase: requireNumber(record, 'phase', line) }
    case 'end':
      return { kind: 'end', totalBatches: requireNumber(record, 'total_batches', line) }
    default:
      throw new ProtocolError(line, `unknown event ${JSON.stringify(record['event'])}`)
  }
}

function parseBatch(record: Record<string, unknown>, line: number): StreamEvent {
  const sampleIds = record['sample_ids']
  if (!isNumberArray(sampleIds) || sampleIds.length === 0) {
    throw new ProtocolError(line, 'sample_ids must be a non-empty number array')
  }
  const src = record['src']
  const tgt = record['tgt']
  if (!isStringMatrix(src) || !isStringMatrix(tgt)) {
    throw new ProtocolError(line, 'src and tgt must be arrays of token arrays')
  }
  if (src.length !== sampleIds.length || tgt.length !== sampleIds.length) {
    throw new ProtocolError(line, 'src/tgt rows must align with sample_ids')
  }
  return {
    kind: 'batch',
    batchId: requireNumber(record, 'batch_id', line),
    phase: requireNumber(record, 'phase', line),
    shard: requireNumber(record, 'shard', line),
    sampleIds,
    src,
    tgt,
    wordCount: requireNumber(record, 'word_count', line),
  }
}

/**
 * Open a protocol source and iterate its events in stream order.
 *
 * @param source path of a stream file, or any readable producing the JSONL
 * @throws ProtocolError on a malformed line (with its 1-based line number)
 * @throws PrematureEndError if the source ends before an `end` record
 */
export async function* openStream(
  source: string | Readable,
): AsyncGenerator<StreamEvent, void, undefined> {
  const input =
    typeof source === 'string' ? createReadStream(source, { encoding: 'utf8' }) : source
  const lines = createInterface({ input, crlfDelay: Infinity })
  let lineNumber = 0
  let expectedBatchId = 0
  try {
    for await (const text of lines) {
      lineNumber += 1
      if (text === '') {
        throw new ProtocolError(lineNumber, 'blank line')
      }
      let record: unknown
      try {
        record = JSON.parse(text)
      } catch (err) {
        throw new ProtocolError(lineNumber, `invalid JSON: ${(err as Error).message}`)
      }
      if (typeof record !== 'object' || record === null || Array.isArray(record)) {
        throw new ProtocolError(lineNumber, 'record must be a JSON object')
      }
      const fields = record as Record<string, unknown>
      if ('event' in fields) {
        const event = parseControl(fields, lineNumber)
        yield event
        if (event.kind === 'end') {
          return
        }
      } else {
        const event = parseBatch(fields, lineNumber)
        if (event.kind === 'batch' && event.batchId !== expectedBatchId) {
          throw new ProtocolError(
            lineNumber,
            `batch_id ${event.batchId} breaks dense order (expected ${expectedBatchId})`,
          )
        }
        expectedBatchId += 1
        yield event
      }
    }
  } finally {
    lines.close()
  }
  throw new PrematureEndError(lineNumber)
}

/** Collect every event of a source into an array (convenience for tests/tools). */
export async function readAll(source: string | Readable): Promise<StreamEvent[]> {
  const events: StreamEvent[] = []
  for await (const event of openStream(source)) {
    events.push(event)
  }
  return events
}
