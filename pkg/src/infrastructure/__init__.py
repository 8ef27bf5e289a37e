from .table_store import decode_table, encode_table, export_csv, read_table, write_table

__all__ = [
    'encode_table',
    'decode_table',
    'read_table',
    'write_table',
    'export_csv',
]
